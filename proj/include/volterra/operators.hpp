#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "volterra/grid.hpp"
#include "volterra/series.hpp"
#include "volterra/symbols.hpp"
#include "volterra/verdict.hpp"
#include "volterra/weights.hpp"

namespace volterra {

enum class OpKind { Tg, Sg };
enum class SpaceKind { Hinf, Bloch };

std::string to_string(OpKind k);
std::string to_string(SpaceKind k);
OpKind parse_op_kind(const std::string& s);
SpaceKind parse_space_kind(const std::string& s);

/// T_g f = int_0^z f g'; the result has degree out_degree and a zero
/// constant term.
TruncatedSeries apply_Tg(const TruncatedSeries& f, const SymbolSpec& g, std::size_t out_degree);
/// S_g f = int_0^z f' g.
TruncatedSeries apply_Sg(const TruncatedSeries& f, const SymbolSpec& g, std::size_t out_degree);

/// (op f)(z) for a polynomial f, integrating along the segment [0, z] with
/// the symbol's closed form (no truncation of g).
cplx apply_at(OpKind op, const TruncatedSeries& f, const SymbolSpec& g, cplx z);

enum class LogKind { LogGPrime, LogG };
std::string to_string(LogKind k);

/// Sampled sup of (1-|z|^2)|g''/g'| (LogGPrime) or (1-|z|^2)|g'/g| (LogG).
/// A vanishing denominator on the grid gives Divergent with its location
/// as the witness.
CriterionResult log_bloch_seminorm(LogKind kind, const SymbolSpec& g, const GridSpec& grid,
                                   int jobs = 1);

struct SearchSpec {
  /// Degree of the test polynomials.
  int degree = 16;
  int random_polys = 32;
  /// Coordinate ascent runs from this many of the best starting points.
  int restarts = 3;
  /// Passes over the 2(degree+1) real directions; the step halves after
  /// every pass.
  int sweeps = 4;
  std::uint64_t seed = 42;
  GridSpec grid{};
};

struct NormEstimate {
  double lower = 0.0;
  /// Upper bound from the matching criterion quantity, when one applies.
  std::optional<double> criterion_upper;
  std::string witness;
  std::vector<cplx> witness_coeffs;
};

/// Lower estimate of ||op||: max of ||op f|| / ||f|| over monomials, random
/// polynomials and coordinate-ascent refinements. Domain and codomain norms
/// are sampled on the same grid. Deterministic for a fixed seed.
NormEstimate opnorm_lower(OpKind op, const SymbolSpec& g, const RadialWeight& nu,
                          const RadialWeight& mu, SpaceKind domain, SpaceKind codomain,
                          const SearchSpec& search = {}, int jobs = 1);

}  // namespace volterra
