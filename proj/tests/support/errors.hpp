#pragma once

#include "stochdil/error.hpp"

#include <gtest/gtest.h>

// Runs f and returns the kind of the stochdil::Error it throws.
template <typename F>
stochdil::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const stochdil::Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected a stochdil::Error";
  return stochdil::ErrorKind::Parse;
}
