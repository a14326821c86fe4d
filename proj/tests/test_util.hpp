//------------------------------------------------------------------------------
//
//   Copyright 2026 The robimp Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------
#pragma once

#include "robimp/error.hpp"
#include "robimp/experiments.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <string>

namespace robimp::test {

inline Rational Q(char const *text)
{
  return parse_rational(text);
}

inline std::string scenario_dir()
{
  char const *dir = std::getenv("ROBIMP_SCENARIO_DIR");
  return dir ? dir : "scenarios";
}

#define EXPECT_ERROR_CODE(stmt, expected)                                                                             \
  do                                                                                                                  \
  {                                                                                                                   \
    try                                                                                                               \
    {                                                                                                                 \
      stmt;                                                                                                           \
      ADD_FAILURE() << "no error thrown";                                                                             \
    }                                                                                                                 \
    catch (::robimp::Error const &e__)                                                                                \
    {                                                                                                                 \
      EXPECT_EQ(e__.code(), expected) << e__.what();                                                                  \
    }                                                                                                                 \
  } while (0)

}  // namespace robimp::test
