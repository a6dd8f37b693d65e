#pragma once

// Text format for bracket specifications.
//
//   order = 7;
//   delta { A[0; 0,1] = 1; A[2; 3,0] = 1; }
//   theta { density[1] = 1/2*th[0,0]*th[0,1]; }
//
// Expressions are sums of products of rationals p/q, u (alias u[0,0]),
// u[s,t], th[s,t], integer powers and parentheses; '#' starts a comment.

#include <compare>
#include <map>
#include <string>
#include <string_view>

#include "json.hpp"

#include "thetaform/normalizer.hpp"

namespace thetaform {

struct DeltaKey {
  int k = 0;   // order in epsilon
  int k1 = 0;  // x-derivatives on the delta function
  int k2 = 0;  // y-derivatives on the delta function
  friend constexpr auto operator<=>(const DeltaKey&, const DeltaKey&) = default;
};

/// Coefficients A_{k;k1,k2} of sum_k eps^k sum A d_x^{k1} d_y^{k2} delta.
struct DeltaForm {
  std::map<DeltaKey, DiffPoly> coefficients;

  /// Only A_{0;0,1} = 1 at order zero.
  bool has_standard_leading() const;
};

/// deg A_{k;k1,k2} = k - k1 - k2 + 1; throws std::invalid_argument otherwise.
void check_delta_degree(const DeltaKey& key, const DiffPoly& a);

enum class BodyKind { delta, theta };

struct BracketSpecFile {
  int order = 1;
  BodyKind kind = BodyKind::delta;
  DeltaForm delta;
  std::map<int, DiffPoly> densities;  // theta body: standard degree -> density

  BracketSeries series() const;
  /// Same file with its order replaced.
  BracketSpecFile with_order(int order) const;
};

/// Throws ParseError, DegreeMismatch or OddPower with 1-based positions.
BracketSpecFile parse_spec(std::string_view text);
DiffPoly parse_expression(std::string_view text);
std::string print_spec(const BracketSpecFile& file);

/// eps^k term -> 1/2 \int theta sum A_{k;k1,k2} theta^(k1,k2) in degree k + 1.
BracketSeries delta_to_theta(const DeltaForm& form, int order);
/// Integrates each component by parts into 1/2 \int theta B theta with the
/// first theta underived.
DeltaForm theta_to_delta(const BracketSeries& p);

std::string rational_string(const Rational& q);
nlohmann::json result_to_json(const NormalizationResult& r);
std::string result_to_text(const NormalizationResult& r, bool with_generators = false);

}  // namespace thetaform
