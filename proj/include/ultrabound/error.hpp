// Copyright 2026 The ultrabound Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace ultrabound {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (t <= 0, eta <= -1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A tabulated curve was queried outside its abscissa hull.
class OutOfHullError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A sup scan found more than one separated local maximum.
class NotUnimodalError : public Error {
 public:
  using Error::Error;
};

/// An integral or series could not be certified as convergent.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace ultrabound
