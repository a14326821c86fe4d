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

#include "robimp/rational.hpp"

#include "robimp/error.hpp"

#include <cctype>
#include <cmath>
#include <string>

namespace robimp {

char const *error_code_name(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::kInvalidArgument:
    return "invalid_argument";
  case ErrorCode::kDimensionMismatch:
    return "dimension_mismatch";
  case ErrorCode::kInfeasible:
    return "infeasible";
  case ErrorCode::kNonGeneric:
    return "non_generic";
  case ErrorCode::kZeroProbability:
    return "zero_probability";
  case ErrorCode::kPrecondition:
    return "precondition";
  case ErrorCode::kParse:
    return "parse";
  case ErrorCode::kIo:
    return "io";
  }
  return "unknown";
}

namespace {

bool all_digits(std::string_view s)
{
  if (s.empty())
  {
    return false;
  }
  for (char c : s)
  {
    if (!std::isdigit(static_cast<unsigned char>(c)))
    {
      return false;
    }
  }
  return true;
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
  {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
  {
    s.remove_suffix(1);
  }
  return s;
}

Rational parse_decimal(std::string_view text, std::string_view original)
{
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+'))
  {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  long exponent = 0;
  auto e_pos    = text.find_first_of("eE");
  if (e_pos != std::string_view::npos)
  {
    std::string_view exp_part = text.substr(e_pos + 1);
    text                      = text.substr(0, e_pos);
    bool exp_negative         = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+'))
    {
      exp_negative = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6)
    {
      fail(ErrorCode::kParse, "malformed exponent in number '" + std::string(original) + "'");
    }
    exponent = std::stol(std::string(exp_part));
    if (exp_negative)
    {
      exponent = -exponent;
    }
  }

  std::string      digits;
  auto             dot      = text.find('.');
  std::string_view int_part = text.substr(0, dot);
  std::string_view frac_part =
      dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
  if ((int_part.empty() && frac_part.empty()) || (!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
  {
    fail(ErrorCode::kParse, "malformed number '" + std::string(original) + "'");
  }
  digits.append(int_part);
  digits.append(frac_part);
  exponent -= static_cast<long>(frac_part.size());

  mpz_class numerator(digits.empty() ? std::string("0") : digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational result;
  if (exponent >= 0)
  {
    result = Rational(numerator * scale);
  }
  else
  {
    result = Rational(numerator, scale);
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  std::string_view original = text;
  text                      = trim(text);
  if (text.empty())
  {
    fail(ErrorCode::kParse, "empty number");
  }
  auto slash = text.find('/');
  if (slash == std::string_view::npos)
  {
    return parse_decimal(text, original);
  }
  Rational num = parse_decimal(trim(text.substr(0, slash)), original);
  Rational den = parse_decimal(trim(text.substr(slash + 1)), original);
  if (den == 0)
  {
    fail(ErrorCode::kParse, "zero denominator in '" + std::string(original) + "'");
  }
  Rational result = num / den;
  return result;
}

std::string to_string(Rational const &value)
{
  return value.get_str();
}

double to_double(Rational const &value)
{
  return value.get_d();
}

Rational from_double(double value)
{
  if (!std::isfinite(value))
  {
    fail(ErrorCode::kInvalidArgument, "non-finite value");
  }
  Rational r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

Rational pow(Rational const &base, unsigned exponent)
{
  Rational result(1);
  Rational b = base;
  while (exponent > 0)
  {
    if (exponent & 1U)
    {
      result *= b;
    }
    b *= b;
    exponent >>= 1U;
  }
  return result;
}

Rational abs(Rational const &value)
{
  return value < 0 ? Rational(-value) : value;
}

Rational sum(std::span<Rational const> values)
{
  Rational total(0);
  for (auto const &v : values)
  {
    total += v;
  }
  return total;
}

Rational ceil_to_grid(Rational const &bound, Rational const &step)
{
  require(step > 0, ErrorCode::kInvalidArgument, "grid step must be positive");
  Rational  ratio = bound / step;
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
  return Rational(q) * step;
}

Rational payoff_tolerance(NumericMode mode)
{
  return mode == NumericMode::kExact ? Rational(0) : from_double(kFloatPayoffTolerance);
}

Rational lottery_tolerance(NumericMode mode)
{
  return mode == NumericMode::kExact ? Rational(0) : from_double(kFloatLotteryTolerance);
}

std::uint64_t SplitMix64::next()
{
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
  z               = (z ^ (z >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  z               = (z ^ (z >> 27U)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31U);
}

std::int64_t SplitMix64::uniform(std::int64_t lo, std::int64_t hi)
{
  auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(next() % span);
}

}  // namespace robimp
