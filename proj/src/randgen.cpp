#include "kclub/randgen.hpp"

#include <charconv>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "kclub/error.hpp"

namespace kclub {

namespace {

// std::uniform_real_distribution is library specific; take the top 53
// bits directly so streams agree across toolchains.
double unit(std::mt19937_64 &rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Graph sample(const GenParams &p, std::mt19937_64 &rng) {
  std::vector<double> prob(p.n);
  for (auto &pi : prob)
    pi = p.a + (p.b - p.a) * unit(rng);
  std::vector<Edge> edges;
  for (Node i = 0; i < p.n; ++i)
    for (Node j = i + 1; j < p.n; ++j)
      if (unit(rng) < 0.5 * (prob[i] + prob[j]))
        edges.emplace_back(i, j);
  return Graph(p.n, edges);
}

} // namespace

void validate(const GenParams &p) {
  if (!(0.0 <= p.a && p.a <= p.b && p.b <= 1.0))
    throw std::invalid_argument("generator needs 0 <= a <= b <= 1");
  if (p.n < 2)
    throw std::invalid_argument("generator needs n >= 2");
}

Graph generate(const GenParams &params) {
  validate(params);
  std::mt19937_64 rng(params.seed);
  return sample(params, rng);
}

GeneratedGraph generate_connected(const GenParams &params,
                                  std::size_t max_attempts) {
  validate(params);
  if (max_attempts == 0)
    throw std::invalid_argument("max_attempts must be positive");
  std::mt19937_64 rng(params.seed);
  for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
    Graph g = sample(params, rng);
    if (is_connected(g))
      return {std::move(g), attempt};
  }
  throw GenerationExhausted("no connected sample after " +
                            std::to_string(max_attempts) +
                            " attempts; parameters too sparse for n=" +
                            std::to_string(params.n));
}

std::pair<GenParams, GenParams> ndv_presets(std::size_t n, double density,
                                            std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 0.5))
    throw std::invalid_argument("density must lie in [0, 0.5] so that b = 2D "
                                "stays a probability");
  return {GenParams{n, density, density, seed},
          GenParams{n, 0.0, 2.0 * density, seed}};
}

GenParams ndv_preset(std::size_t n, double density, Ndv ndv,
                     std::uint64_t seed) {
  auto [lo, hi] = ndv_presets(n, density, seed);
  return ndv == Ndv::Min ? lo : hi;
}

Ndv parse_ndv(const std::string &name) {
  if (name == "min")
    return Ndv::Min;
  if (name == "max")
    return Ndv::Max;
  throw std::invalid_argument("ndv must be 'min' or 'max'");
}

namespace {

// Shortest text that parses back to the same double.
std::string shortest(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

} // namespace

std::string generation_metadata(const GenParams &params,
                                const GeneratedGraph &sample) {
  std::ostringstream out;
  out << "generator=" << kGeneratorName << '\n'
      << "n=" << params.n << '\n'
      << "a=" << shortest(params.a) << '\n'
      << "b=" << shortest(params.b) << '\n'
      << "seed=" << params.seed << '\n'
      << "attempts=" << sample.attempts << '\n'
      << "m=" << sample.graph.num_edges() << '\n'
      << "density=" << shortest(density(sample.graph)) << '\n'
      << "degree_variance=" << shortest(degree_variance(sample.graph)) << '\n';
  return out.str();
}

} // namespace kclub
