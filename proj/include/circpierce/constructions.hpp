#pragma once

// Deterministic rational societies: uniform, sharp and the worked figure examples.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "circpierce/spectrum.hpp"

namespace circpierce {

/// U(n,h): n half-open arcs [(i-1)/n, (i-1+h)/n). With closed_epsilon the arcs
/// become closed and shrink by epsilon at the right end.
Society<Rational> uniform_society(int n, int h, std::optional<Rational> closed_epsilon = std::nullopt);

/// 2q-1 closed arcs of length 1/q, consecutive left ends 1/q + 1/(2q^2) apart.
Society<Rational> sharp_society(int q);

/// Named example societies. Throws InputError for an unknown id.
Society<Rational> figure_society(std::string_view id);
const std::vector<std::string>& figure_ids();

enum class ConstructionKind { uniform, sharp, figure_example };

struct ConstructionSpec {
  ConstructionKind kind = ConstructionKind::uniform;
  int n = 0;
  int h = 0;
  int q = 0;
  std::string id;
  std::optional<Rational> closed_epsilon;

  /// Throws DomainError on parameters outside 1 <= h < n or q >= 2.
  void validate() const;
};

Society<Rational> build(const ConstructionSpec& spec);

}  // namespace circpierce
