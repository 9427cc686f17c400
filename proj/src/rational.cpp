#include "shadowlab/rational.hpp"

#include <cctype>

namespace shadowlab {

std::string rat_to_string(const Rat& value) { return value.str(); }

namespace {

bool valid_integer_token(const std::string& s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat rat_from_string(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    if (!valid_integer_token(text, true)) fail(Errc::bad_input, "malformed rational: '" + text + "'");
    return Rat(BigInt(text));
  }
  const std::string num = text.substr(0, slash);
  const std::string den = text.substr(slash + 1);
  if (!valid_integer_token(num, true) || !valid_integer_token(den, true)) {
    fail(Errc::bad_input, "malformed rational: '" + text + "'");
  }
  const BigInt d(den);
  if (d == 0) fail(Errc::bad_input, "zero denominator: '" + text + "'");
  // Division canonicalizes: lowest terms, positive denominator.
  return Rat(BigInt(num)) / Rat(d);
}

std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream0, std::uint64_t stream1) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
      static_cast<std::uint32_t>(stream0), static_cast<std::uint32_t>(stream0 >> 32),
      static_cast<std::uint32_t>(stream1), static_cast<std::uint32_t>(stream1 >> 32)};
  return std::mt19937_64(seq);
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) fail(Errc::bad_input, "draw with zero bound");
  return rng() % bound;
}

Rat random_rational(std::mt19937_64& rng, std::uint64_t num_range, std::uint64_t den_range) {
  const auto num = static_cast<std::int64_t>(draw(rng, 2 * num_range + 1)) - static_cast<std::int64_t>(num_range);
  const auto den = static_cast<std::int64_t>(1 + draw(rng, den_range));
  return Rat(num) / Rat(den);
}

Rat random_positive_rational(std::mt19937_64& rng, std::uint64_t num_range, std::uint64_t den_range) {
  const auto num = static_cast<std::int64_t>(1 + draw(rng, num_range));
  const auto den = static_cast<std::int64_t>(1 + draw(rng, den_range));
  return Rat(num) / Rat(den);
}

Rat random_wide_rational(std::mt19937_64& rng, unsigned bits) {
  BigInt num = 0;
  for (unsigned produced = 0; produced < bits; produced += 32) {
    num <<= 32;
    num += static_cast<std::uint32_t>(rng());
  }
  if (draw(rng, 2) == 0) num = -num;
  const BigInt den = 1 + BigInt(draw(rng, 1000000));
  return Rat(num) / Rat(den);
}

}  // namespace shadowlab
