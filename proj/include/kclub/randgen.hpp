#pragma once

#include <cstdint>
#include <string>
#include <utility>

#include "kclub/graph.hpp"

namespace kclub {

/// Parameters of the density/degree-variance controlled generator.
///
/// Every node draws a personal probability uniformly from [a, b]; each pair
/// {i, j} is then an edge with probability (p_i + p_j) / 2. The expected
/// density is (a + b) / 2 and degree variance grows with b - a. a == b is
/// the uniform G(n, p) model.
struct GenParams {
  std::size_t n = 0;
  double a = 0.0;
  double b = 0.0;
  std::uint64_t seed = 0;
};

/// Name of the pseudo-random algorithm; written to metadata sidecars.
inline constexpr const char *kGeneratorName = "mt19937_64";

void validate(const GenParams &p);

Graph generate(const GenParams &params);

struct GeneratedGraph {
  Graph graph;
  std::size_t attempts = 0;
};

inline constexpr std::size_t kDefaultMaxAttempts = 1000;

/// Draws samples from one generator stream until a connected one appears.
/// Throws GenerationExhausted after max_attempts rejections.
GeneratedGraph generate_connected(const GenParams &params,
                                  std::size_t max_attempts = kDefaultMaxAttempts);

/// (min NDV, max NDV) presets for expected density D: (a=b=D) and
/// (a=0, b=2D). Requires 0 <= D <= 0.5.
std::pair<GenParams, GenParams> ndv_presets(std::size_t n, double density,
                                            std::uint64_t seed = 0);

enum class Ndv { Min, Max };
GenParams ndv_preset(std::size_t n, double density, Ndv ndv,
                     std::uint64_t seed = 0);
Ndv parse_ndv(const std::string &name);

/// key=value metadata sidecar for a generated sample.
std::string generation_metadata(const GenParams &params,
                                const GeneratedGraph &sample);

} // namespace kclub
