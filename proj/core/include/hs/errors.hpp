#pragma once

#include <stdexcept>
#include <string>

namespace hs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A span or highlight referenced a document the store does not hold.
class UnknownDocument : public Error {
 public:
  explicit UnknownDocument(const std::string& id)
      : Error("unknown document id: " + id), id_(id) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

/// Transport failure, timeout or non-success status. The gateway retries these.
class TransportError : public Error {
 public:
  using Error::Error;
};

/// A model call failed after all transport retries were used up.
class GatewayError : public Error {
 public:
  using Error::Error;
};

class StructuredOutputFailure : public Error {
 public:
  StructuredOutputFailure(const std::string& what, int attempts, std::string last_reply = {})
      : Error(what), attempts_(attempts), last_reply_(std::move(last_reply)) {}
  int attempts() const noexcept { return attempts_; }
  const std::string& last_reply() const noexcept { return last_reply_; }

 private:
  int attempts_;
  std::string last_reply_;
};

/// The extractive span-prediction service could not be reached or answered garbage.
class HighlighterUnavailable : public Error {
 public:
  using Error::Error;
};

/// A metric whose denominator is empty (no tokens, constant series, ...).
class UndefinedMetric : public Error {
 public:
  using Error::Error;
};

class JudgeFailure : public Error {
 public:
  using Error::Error;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace hs
