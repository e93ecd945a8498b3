#pragma once

#include <optional>

#include "selmer/error.hpp"

// Kind of the selmer::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<selmer::ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const selmer::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}
