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

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace robimp {

/// Exact rational number. Every incentive comparison in the library is decided
/// over this type.
using Rational = mpq_class;

/// Parses "7/10", "-3", "0.125" or "1e-3" into an exact rational. Decimal
/// literals are read digit by digit, never through a double.
Rational parse_rational(std::string_view text);

std::string to_string(Rational const &value);
double      to_double(Rational const &value);

/// Exact conversion; every finite double is a dyadic rational.
Rational from_double(double value);

Rational pow(Rational const &base, unsigned exponent);
Rational abs(Rational const &value);
Rational sum(std::span<Rational const> values);

/// Smallest multiple of `step` that is >= `bound`.
Rational ceil_to_grid(Rational const &bound, Rational const &step);

/// Numeric regime for comparisons. Exact mode decides every inequality with
/// zero tolerance; float mode allows the fixed tolerances used for sweeps.
enum class NumericMode
{
  kExact,
  kFloat
};

inline constexpr double kFloatPayoffTolerance = 1e-9;
inline constexpr double kFloatLotteryTolerance = 1e-12;

Rational payoff_tolerance(NumericMode mode);
Rational lottery_tolerance(NumericMode mode);

/// Deterministic generator used by property tests and experiments. The output
/// sequence depends only on the seed (no std distributions involved).
class SplitMix64
{
public:
  explicit SplitMix64(std::uint64_t seed)
    : state_(seed)
  {}

  std::uint64_t next();

  /// Uniform integer in [lo, hi].
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

private:
  std::uint64_t state_;
};

}  // namespace robimp
