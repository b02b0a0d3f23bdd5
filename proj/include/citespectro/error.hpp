#pragma once

#include <stdexcept>
#include <string>

namespace citespectro {

// Base of every error the library throws. Recoverable per-record defects are
// not errors; they are collected as ingest warnings on the Corpus.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural problem with an input file (missing header, missing column).
class MalformedFile : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// An operation that needs data received none (empty series, empty corpus,
// empty distribution, venue with no papers).
class EmptyInput : public Error {
 public:
  using Error::Error;
};

class EmptyCorpus : public EmptyInput {
 public:
  using EmptyInput::EmptyInput;
};

class EmptyDistribution : public EmptyInput {
 public:
  using EmptyInput::EmptyInput;
};

class NoPapers : public EmptyInput {
 public:
  using EmptyInput::EmptyInput;
};

class VenueNotFound : public Error {
 public:
  using Error::Error;
};

class ZeroTotal : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (window not odd, lo > hi, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace citespectro
