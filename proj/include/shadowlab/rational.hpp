#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <random>
#include <string>

#include "shadowlab/errors.hpp"

namespace shadowlab {

/// Exact rational scalar. GMP keeps values canonical: lowest terms, positive
/// denominator. All geometry in this project runs on these; no floating point
/// outside the certified-interval norm engine.
using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Serialized form "p/q", or just "p" when q == 1 (e.g. "-3/7").
std::string rat_to_string(const Rat& value);

/// Parses "p/q" or "p". Rejects malformed input and zero denominators,
/// canonicalizes (so "4/6" loads as 2/3 and "1/-2" as -1/2).
Rat rat_from_string(const std::string& text);

/// Deterministic RNG stream derived from (seed, stream ids). mt19937_64 is a
/// pinned algorithm, so runs reproduce across platforms.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream0 = 0, std::uint64_t stream1 = 0);

/// Uniform draw in [0, bound). Avoids std::uniform_int_distribution, whose
/// output is implementation-defined.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound);

/// Random rational with numerator in [-num_range, num_range] and denominator
/// in [1, den_range].
Rat random_rational(std::mt19937_64& rng, std::uint64_t num_range, std::uint64_t den_range);

/// Random positive rational with numerator in [1, num_range].
Rat random_positive_rational(std::mt19937_64& rng, std::uint64_t num_range, std::uint64_t den_range);

/// Random rational whose numerator has roughly `bits` random bits; exercises
/// the arbitrary-precision paths in serialization tests.
Rat random_wide_rational(std::mt19937_64& rng, unsigned bits);

}  // namespace shadowlab
