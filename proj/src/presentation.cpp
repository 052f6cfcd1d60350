#include "zsl/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "zsl/csv.hpp"
#include "zsl/error.hpp"
#include "zsl/rng.hpp"

namespace zsl {

std::string letter_token(Letter l) {
  return std::string(1, l.inverse() ? 'A' : 'a') + std::to_string(l.index());
}

bool is_cyclically_reduced(const Relator& r) {
  return r.y != r.x.inv() && r.z != r.y.inv() && r.x != r.z.inv();
}

std::uint64_t relator_count(std::uint32_t m) {
  const std::uint64_t k = 2 * static_cast<std::uint64_t>(m) - 1;
  return k * k * k + 1;
}

namespace {

// Number of words sharing a given first letter.
std::uint64_t block_size(std::uint64_t m) { return (2 * m - 1) + (2 * m - 2) * (2 * m - 2); }

void check_letter(std::uint32_t m, Letter l) {
  if (l.index() >= m)
    throw Error(Errc::BadParameter, "generator index " + std::to_string(l.index()) + " >= m");
}

}  // namespace

std::uint64_t rank_relator(std::uint32_t m, const Relator& r) {
  if (!is_cyclically_reduced(r)) throw Error(Errc::BadParameter, "word is not cyclically reduced");
  check_letter(m, r.x);
  check_letter(m, r.y);
  check_letter(m, r.z);
  const std::uint64_t mm = m;
  const std::uint64_t xi = r.x.inv().code;
  const std::uint64_t x = r.x.code, y = r.y.code, z = r.z.code;
  // Position of y among the letters other than x^-1; the block for y = x
  // has one extra word because then y^-1 = x^-1 excludes a single z.
  const std::uint64_t j = y < xi ? y : y - 1;
  const std::uint64_t px = x < xi ? x : x - 1;
  std::uint64_t offset = j * (2 * mm - 2) + (j > px ? 1 : 0);
  const std::uint64_t yi = r.y.inv().code;
  std::uint64_t k = z;
  if (z > xi) --k;
  if (yi != xi && z > yi) --k;
  return r.x.code * block_size(mm) + offset + k;
}

Relator unrank_relator(std::uint32_t m, std::uint64_t rank) {
  if (m == 0 || rank >= relator_count(m)) throw Error(Errc::BadParameter, "relator rank out of range");
  const std::uint64_t mm = m;
  const std::uint64_t bs = block_size(mm);
  Relator r;
  r.x = {static_cast<std::uint32_t>(rank / bs)};
  std::uint64_t rem = rank % bs;
  const std::uint64_t x = r.x.code, xi = r.x.inv().code;
  const std::uint64_t px = x < xi ? x : x - 1;
  const std::uint64_t w = 2 * mm - 2;
  std::uint64_t j = 0, k = 0;
  if (rem < px * w) {
    j = rem / w;
    k = rem % w;
  } else if (rem < px * w + w + 1) {
    j = px;
    k = rem - px * w;
  } else {
    const std::uint64_t rest = rem - px * w - (w + 1);
    j = px + 1 + rest / w;
    k = rest % w;
  }
  r.y = {static_cast<std::uint32_t>(j < xi ? j : j + 1)};
  const std::uint64_t yi = r.y.inv().code;
  std::uint64_t lo = std::min(xi, yi), hi = std::max(xi, yi);
  std::uint64_t z = k;
  if (z >= lo) ++z;
  if (hi != lo && z >= hi) ++z;
  r.z = {static_cast<std::uint32_t>(z)};
  return r;
}

std::vector<Relator> enumerate_relators(std::uint32_t m, std::uint32_t cap) {
  if (m == 0) throw Error(Errc::BadParameter, "m must be at least 1");
  if (m > cap)
    throw Error(Errc::TooLarge, "enumeration limited to m <= " + std::to_string(cap));
  std::vector<Relator> out;
  out.reserve(relator_count(m));
  const std::uint32_t letters = 2 * m;
  for (std::uint32_t x = 0; x < letters; ++x)
    for (std::uint32_t y = 0; y < letters; ++y)
      for (std::uint32_t z = 0; z < letters; ++z) {
        Relator r{{x}, {y}, {z}};
        if (is_cyclically_reduced(r)) out.push_back(r);
      }
  return out;
}

std::string ModelTag::to_string() const {
  switch (kind) {
    case ModelKind::Density: return "density(" + format_double(param) + ")";
    case ModelKind::Uniform: return "uniform(" + format_double(param) + ")";
    case ModelKind::Binomial: return "binomial(" + format_double(param) + ")";
    case ModelKind::Explicit: return "explicit";
  }
  return "explicit";
}

ModelTag ModelTag::parse(const std::string& text) {
  if (text == "explicit") return {};
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')')
    throw Error(Errc::ParseError, "bad model tag '" + text + "'");
  const std::string name = text.substr(0, open);
  const std::string arg = text.substr(open + 1, text.size() - open - 2);
  ModelTag t;
  if (name == "density") t.kind = ModelKind::Density;
  else if (name == "uniform") t.kind = ModelKind::Uniform;
  else if (name == "binomial") t.kind = ModelKind::Binomial;
  else throw Error(Errc::ParseError, "unknown model '" + name + "'");
  std::size_t used = 0;
  try {
    t.param = std::stod(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size()) throw Error(Errc::ParseError, "bad model parameter '" + arg + "'");
  return t;
}

namespace {

Presentation from_ranks(std::uint32_t m, std::vector<std::uint64_t> ranks, ModelTag tag,
                        std::uint64_t seed) {
  std::sort(ranks.begin(), ranks.end());
  Presentation p;
  p.m = m;
  p.model = tag;
  p.seed = seed;
  p.relators.reserve(ranks.size());
  for (std::uint64_t r : ranks) p.relators.push_back(unrank_relator(m, r));
  return p;
}

std::vector<std::uint64_t> floyd_subset(std::uint64_t total, std::uint64_t n, std::uint64_t seed) {
  CounterRng rng(seed);
  std::unordered_set<std::uint64_t> chosen;
  chosen.reserve(n * 2);
  std::vector<std::uint64_t> out;
  out.reserve(n);
  for (std::uint64_t j = total - n; j < total; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    const std::uint64_t pick = chosen.insert(t).second ? t : j;
    if (pick == j) chosen.insert(j);
    out.push_back(pick);
  }
  return out;
}

}  // namespace

Presentation sample_uniform_model(std::uint32_t m, std::uint64_t n, std::uint64_t seed) {
  if (m == 0) throw Error(Errc::BadParameter, "m must be at least 1");
  const std::uint64_t total = relator_count(m);
  if (n > total)
    throw Error(Errc::NTooLarge, std::to_string(n) + " relators requested, only " +
                                     std::to_string(total) + " exist");
  return from_ranks(m, floyd_subset(total, n, seed), {ModelKind::Uniform, static_cast<double>(n)}, seed);
}

Presentation sample_density_model(std::uint32_t m, double d, std::uint64_t seed) {
  if (!(d > 0.0 && d < 1.0)) throw Error(Errc::BadParameter, "density must lie in (0, 1)");
  if (m == 0) throw Error(Errc::BadParameter, "m must be at least 1");
  const double target = std::round(std::pow(2.0 * m - 1.0, 3.0 * d));
  if (target > static_cast<double>(relator_count(m)))
    throw Error(Errc::NTooLarge, "density gives more relators than words");
  auto p = sample_uniform_model(m, static_cast<std::uint64_t>(target), seed);
  p.model = {ModelKind::Density, d};
  return p;
}

Presentation sample_binomial_model(std::uint32_t m, double rho, std::uint64_t seed) {
  if (m == 0) throw Error(Errc::BadParameter, "m must be at least 1");
  if (!(rho >= 0.0 && rho <= 1.0)) throw Error(Errc::BadParameter, "rho must lie in [0, 1]");
  const std::uint64_t total = relator_count(m);
  std::vector<std::uint64_t> ranks;
  if (rho == 1.0) {
    ranks.resize(total);
    for (std::uint64_t i = 0; i < total; ++i) ranks[i] = i;
  } else if (rho > 0.0) {
    // Gaps between kept words are geometric; one uniform per kept word.
    CounterRng rng(seed);
    const double denom = std::log1p(-rho);
    const double expected = rho * static_cast<double>(total);
    ranks.reserve(static_cast<std::size_t>(expected + 6.0 * std::sqrt(expected) + 16.0));
    double pos = -1.0;
    for (;;) {
      const double skip = std::floor(std::log(rng.uniform_open0()) / denom);
      pos += skip + 1.0;
      if (pos >= static_cast<double>(total)) break;
      ranks.push_back(static_cast<std::uint64_t>(pos));
    }
  }
  Presentation p;
  p.m = m;
  p.model = {ModelKind::Binomial, rho};
  p.seed = seed;
  p.relators.reserve(ranks.size());
  for (std::uint64_t r : ranks) p.relators.push_back(unrank_relator(m, r));
  return p;
}

void normalize_relators(std::uint32_t m, std::vector<Relator>& relators) {
  std::vector<std::pair<std::uint64_t, Relator>> keyed;
  keyed.reserve(relators.size());
  for (const auto& r : relators) keyed.emplace_back(rank_relator(m, r), r);
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  relators.clear();
  for (std::size_t i = 0; i < keyed.size(); ++i)
    if (i == 0 || keyed[i].first != keyed[i - 1].first) relators.push_back(keyed[i].second);
}

void write_presentation(std::ostream& out, const Presentation& p) {
  out << "m " << p.m << " model " << p.model.to_string() << " seed " << p.seed << '\n';
  for (const auto& r : p.relators)
    out << letter_token(r.x) << ' ' << letter_token(r.y) << ' ' << letter_token(r.z) << '\n';
}

namespace {

Letter parse_letter(const std::string& tok, std::size_t line) {
  auto fail = [&] {
    return Error(Errc::ParseError, "line " + std::to_string(line) + ": bad letter '" + tok + "'");
  };
  if (tok.size() < 2 || (tok[0] != 'a' && tok[0] != 'A')) throw fail();
  if (tok.find_first_not_of("0123456789", 1) != std::string::npos) throw fail();
  unsigned long idx = 0;
  try {
    idx = std::stoul(tok.substr(1));
  } catch (const std::exception&) {
    throw fail();
  }
  if (idx > 0x7fffffffUL) throw fail();
  return Letter::gen(static_cast<std::uint32_t>(idx), tok[0] == 'A');
}

}  // namespace

Presentation read_presentation(std::istream& in) {
  Presentation p;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(lineno) + ": ";
    if (!have_header) {
      if (toks.size() < 4 || toks[0] != "m" || toks[2] != "model" ||
          !(toks.size() == 4 || (toks.size() == 6 && toks[4] == "seed")))
        throw Error(Errc::ParseError, where + "expected 'm <m> model <tag> [seed <s>]'");
      try {
        std::size_t used = 0;
        const unsigned long mv = std::stoul(toks[1], &used);
        if (used != toks[1].size() || mv == 0 || mv > 0x7fffffffUL) throw std::invalid_argument("m");
        p.m = static_cast<std::uint32_t>(mv);
        if (toks.size() == 6) {
          p.seed = std::stoull(toks[5], &used);
          if (used != toks[5].size()) throw std::invalid_argument("seed");
        }
      } catch (const std::exception&) {
        throw Error(Errc::ParseError, where + "bad header value");
      }
      try {
        p.model = ModelTag::parse(toks[3]);
      } catch (const Error& e) {
        throw Error(Errc::ParseError, where + e.what());
      }
      have_header = true;
      continue;
    }
    if (toks.size() != 3) throw Error(Errc::ParseError, where + "a relator has three letters");
    Relator r{parse_letter(toks[0], lineno), parse_letter(toks[1], lineno), parse_letter(toks[2], lineno)};
    for (Letter l : {r.x, r.y, r.z})
      if (l.index() >= p.m)
        throw Error(Errc::ParseError, where + "generator index out of range");
    if (!is_cyclically_reduced(r))
      throw Error(Errc::ParseError, where + "relator is not cyclically reduced");
    p.relators.push_back(r);
  }
  if (!have_header) throw Error(Errc::ParseError, "missing header line");
  normalize_relators(p.m, p.relators);
  return p;
}

Presentation read_presentation_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  return read_presentation(in);
}

}  // namespace zsl
