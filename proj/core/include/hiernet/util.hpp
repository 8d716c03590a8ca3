#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hiernet {

std::string_view trim(std::string_view s);
std::string to_lower(std::string_view s);

// Trims and replaces every run of whitespace by a single space.
std::string collapse_whitespace(std::string_view s);

// Lowercase identifier made of alphanumeric runs joined by '-'.
std::string slugify(std::string_view s);

// Splits on a single separator character, keeping empty fields.
std::vector<std::string> split(std::string_view s, char sep);

uint64_t fnv1a64(std::string_view bytes);

// splitmix64 finalizer; used to derive independent RNG streams.
uint64_t mix64(uint64_t x);
uint64_t hash_combine(uint64_t a, uint64_t b);

// Sampling helpers with pinned algorithms so that seeded runs reproduce
// byte-identically regardless of the standard library's distribution
// implementations.
double uniform01(std::mt19937_64& rng);                              // [0, 1)
std::size_t uniform_index(std::mt19937_64& rng, std::size_t n);      // [0, n)
std::size_t sample_weighted(std::mt19937_64& rng,
                            std::span<const double> weights);

// Locale-independent shortest-exact formatting (%.17g) for doubles.
std::string format_double(double v);

}  // namespace hiernet
