#pragma once

#include <string>
#include <utility>
#include <variant>

namespace rcsp {

// Error taxonomy shared by every layer. Rule application reports NotEnabled
// rather than throwing, because callers routinely probe rules that do not
// apply (enumeration, schedulers, the explorer).
enum class Errc {
  NotEnabled,
  BadTime,
  Stuck,
  EmptyStack,
  WrongEndpoint,
  UnknownChannel,
  UnknownProcess,
  UnmappableState,
  BoundsTooLarge,
  NotQuiescent,
  SpawnFailure,
  ParseError,
  Mismatch,
};

const char* errc_name(Errc c);

struct Error {
  Errc code;
  std::string detail;
  std::string to_text() const;
};

template <typename T>
class Result {
 public:
  Result(T value) : v_(std::move(value)) {}
  Result(Error e) : v_(std::move(e)) {}
  Result(Errc code, std::string detail = "") : v_(Error{code, std::move(detail)}) {}

  bool ok() const { return std::holds_alternative<T>(v_); }
  explicit operator bool() const { return ok(); }

  T& value() { return std::get<T>(v_); }
  const T& value() const { return std::get<T>(v_); }
  T& operator*() { return value(); }
  const T& operator*() const { return value(); }
  const T* operator->() const { return &value(); }

  const Error& error() const { return std::get<Error>(v_); }
  Errc code() const { return error().code; }

 private:
  std::variant<T, Error> v_;
};

}  // namespace rcsp
