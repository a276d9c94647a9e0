// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "doctest.h"
#include "errors.hpp"

#define CHECK_ERROR_CODE(expr, expected_code)                      \
  do {                                                             \
    bool caught_ = false;                                          \
    try {                                                          \
      (void)(expr);                                                \
    } catch (const ::primpairs::Error& e_) {                       \
      caught_ = true;                                              \
      CHECK(e_.code() == (expected_code));                         \
    }                                                              \
    CHECK_MESSAGE(caught_, "expected an error from " #expr);       \
  } while (0)
