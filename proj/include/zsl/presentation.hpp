#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zsl {

// Letter code 2*i for generator s_i, 2*i + 1 for its inverse.
struct Letter {
  std::uint32_t code = 0;

  static Letter gen(std::uint32_t index, bool inverse = false) { return {2 * index + (inverse ? 1u : 0u)}; }
  std::uint32_t index() const { return code >> 1; }
  bool inverse() const { return code & 1u; }
  Letter inv() const { return {code ^ 1u}; }
  auto operator<=>(const Letter&) const = default;
};

// Token form: "a3" for s_3, "A3" for its inverse.
std::string letter_token(Letter l);

struct Relator {
  Letter x, y, z;
  auto operator<=>(const Relator&) const = default;
};

bool is_cyclically_reduced(const Relator& r);

// (2m - 1)^3 + 1, the number of cyclically reduced words of length 3.
std::uint64_t relator_count(std::uint32_t m);

// Bijection between cyclically reduced words and [0, relator_count(m)),
// increasing in the lexicographic order of letter codes.
std::uint64_t rank_relator(std::uint32_t m, const Relator& r);
Relator unrank_relator(std::uint32_t m, std::uint64_t rank);

// Every cyclically reduced word, in lexicographic order. Throws TooLarge
// when m exceeds `cap`, BadParameter when m = 0.
std::vector<Relator> enumerate_relators(std::uint32_t m, std::uint32_t cap = 64);

enum class ModelKind { Density, Uniform, Binomial, Explicit };

struct ModelTag {
  ModelKind kind = ModelKind::Explicit;
  double param = 0.0;  // d, N or rho

  std::string to_string() const;  // "density(0.4)", "uniform(19)", ...
  static ModelTag parse(const std::string& text);
};

struct Presentation {
  std::uint32_t m = 0;
  std::vector<Relator> relators;  // sorted by rank, no duplicates
  ModelTag model;
  std::uint64_t seed = 0;
};

// M(m, d): N = round((2m-1)^(3d)) relators chosen uniformly.
// Throws BadParameter (d outside (0, 1)), NTooLarge.
Presentation sample_density_model(std::uint32_t m, double d, std::uint64_t seed);
// M'(m, N). Throws NTooLarge.
Presentation sample_uniform_model(std::uint32_t m, std::uint64_t n, std::uint64_t seed);
// Gamma(m, rho): every word kept independently with probability rho.
Presentation sample_binomial_model(std::uint32_t m, double rho, std::uint64_t seed);

// Sorts and removes duplicate words; throws BadParameter on a word that is
// not cyclically reduced or uses a generator index >= m.
void normalize_relators(std::uint32_t m, std::vector<Relator>& relators);

// Header "m <m> model <tag> [seed <s>]", then one relator per line.
void write_presentation(std::ostream& out, const Presentation& p);
// Throws ParseError (with line number), BadParameter.
Presentation read_presentation(std::istream& in);
Presentation read_presentation_file(const std::string& path);

}  // namespace zsl
