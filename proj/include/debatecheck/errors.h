// Copyright 2026 The debatecheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DEBATECHECK_ERRORS_H_
#define DEBATECHECK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace debatecheck {

// Root of every error raised by the library. Subclasses carry no extra state
// beyond the message; callers dispatch on type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// core_model
class UnknownVerdict : public Error {
 public:
  using Error::Error;
};

// llm_gateway
class BackendError : public Error {
 public:
  using Error::Error;
  virtual bool retryable() const { return false; }
};
class TransportError : public BackendError {
 public:
  using BackendError::BackendError;
  bool retryable() const override { return true; }
};
class RateLimited : public BackendError {
 public:
  using BackendError::BackendError;
  bool retryable() const override { return true; }
};
class ProviderError : public BackendError {
 public:
  ProviderError(int status, const std::string& what)
      : BackendError(what), status_(status) {}
  int status() const { return status_; }

 private:
  int status_;
};
class ExhaustedRetries : public BackendError {
 public:
  ExhaustedRetries(int attempts, const std::string& last_cause)
      : BackendError("retries exhausted after " + std::to_string(attempts) +
                     " attempt(s): " + last_cause),
        attempts_(attempts),
        last_cause_(last_cause) {}
  int attempts() const { return attempts_; }
  const std::string& last_cause() const { return last_cause_; }

 private:
  int attempts_;
  std::string last_cause_;
};
class FixtureError : public Error {
 public:
  using Error::Error;
};

// prompt_forge
class MissingBinding : public Error {
 public:
  explicit MissingBinding(const std::string& name)
      : Error("missing binding for placeholder [" + name + "]"), name_(name) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};
class UnknownTemplate : public Error {
 public:
  using Error::Error;
};

// debate_engine
class MalformedDecision : public Error {
 public:
  using Error::Error;
};
class UndecidableDebate : public Error {
 public:
  using Error::Error;
};

// syndec_builder
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};
class MalformedCorrection : public Error {
 public:
  using Error::Error;
};

// eval_harness
class EmptyInput : public Error {
 public:
  using Error::Error;
};
class EmptyGold : public Error {
 public:
  using Error::Error;
};
class UndefinedDenominator : public Error {
 public:
  using Error::Error;
};
class UnknownModelRate : public Error {
 public:
  using Error::Error;
};

// corpus_io
class CorpusParseError : public Error {
 public:
  using Error::Error;
};
class MissingRetrievalFile : public Error {
 public:
  using Error::Error;
};
class LabelParseError : public Error {
 public:
  using Error::Error;
};
class StoreIoError : public Error {
 public:
  using Error::Error;
};
class MissingOutcomes : public Error {
 public:
  using Error::Error;
};

// cli: bad flags or configuration; maps to exit code 2.
class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace debatecheck

#endif  // DEBATECHECK_ERRORS_H_
