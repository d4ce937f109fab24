#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qcantor/basic_sequence.hpp"
#include "qcantor/expansion.hpp"
#include "qcantor/real.hpp"

// The explicit basic sequence
//
//   Q = [X_2]^{L_2} [X_3]^{L_3} [X_4]^{L_4} ...,   X_i = [[i]^{n_i} [(i!)^2]^{n_i}]^{ell_i}
//
// with n_i = i^{floor(ln i)}, the digits of eta over it, and the Moran-set
// bookkeeping (alpha_i = i, beta_i = (i!)^2, s_i = t_i = n_i,
// upsilon_i = L_i ell_i). Positions are 1-based; offsets inside a region,
// copy or period are 0-based.
namespace qcantor::construction {

using Index = unsigned long;

struct ConstructionParams {
  Index i = 0;
  Integer n;        // n_i; n_1 = 0
  Real eps;         // n_i^{-1/4}; +inf for i = 1
  Index alpha = 0;  // i
  Integer beta;     // (i!)^2
  Integer s;        // = t = n_i
  Integer t;
  Integer ell;      // |L_i|
  Integer L;        // copies of X_i
  Integer upsilon;  // L_i ell_i
};

/// I_i = {1, ..., K_i} intersected with m_i Z, K_i = floor(beta_i^{1 - 1/ln i}),
/// m_i = floor(sqrt(i))!.
struct IDescriptor {
  Integer bound;    // K_i
  Integer modulus;  // m_i
  mpfr_prec_t precision_used = 0;

  bool contains(const Integer& d) const { return d >= 1 && d <= bound && d % modulus == 0; }
  Integer cardinality() const { return bound / modulus; }
  bool empty() const { return cardinality() == 0; }
  /// k-th member, 0-based: (k + 1) m_i.
  Integer member(const Integer& k) const { return (k + 1) * modulus; }
};

struct SegmentAddress {
  Index i = 0;
  Integer j;      // copy number in [1, L_i]
  Position first; // N_{i,j}
  Position last;  // M_{i,j}
};

/// Preimage triple of Phi_alpha: 0 <= c < upsilon_i, 0 <= d < s_i.
struct MoranIndex {
  Index i = 0;
  Integer c;
  Integer d;

  bool operator==(const MoranIndex&) const = default;
};

/// Where a position of Q sits inside the layout.
struct Location {
  Index i = 0;
  Integer copy;    // j in [1, L_i]
  Integer run;     // index of the [i]^{n_i} run inside the copy, in [0, ell_i)
  Integer offset;  // offset inside the 2 n_i period
  bool large = false;  // base (i!)^2 rather than i
};

Integer n_of(Index i);
Integer ell_of(Index i);
Integer L_of(Index i);

/// Memoized; safe to call from several threads.
const ConstructionParams& params(Index i);

/// Number of positions of Q before the first copy of X_i, i.e.
/// sum_{k < i} 2 L_k ell_k n_k.
const Integer& region_offset(Index i);
/// 2 L_i ell_i n_i.
Integer region_length(Index i);

Location locate(const Position& n);

/// The z-th member of L_i in lexicographic order: base-i digits of z i!,
/// left-padded to n_i digits.
std::vector<Integer> small_block(Index i, const Integer& z);
/// Digit `d` (0-based from the left) of small_block(i, z).
Integer small_block_digit(Index i, const Integer& z, const Integer& d);

/// The constructed Q.
class ConstructedSequence final : public BasicSequence {
 public:
  Integer base_at(const Position& n) const override;
  Integer prefix_product_mod(const Position& n, const Integer& modulus) const override;
};

const ConstructedSequence& constructed_q();

/// E_n of eta: i! on large-base positions, the L_i block digit otherwise.
Integer eta_digit(const Position& n);

SegmentAddress segment_bounds(Index i, const Integer& j);

/// sum_{j<i} upsilon_j s_j + c s_i + d, 0-based.
Position phi_alpha(const MoranIndex& t);
MoranIndex phi_alpha_inv(const Position& m);
/// 0-based position of the small base addressed by Phi-index m.
Position g_of(const Position& m);
/// F_m: the small-base digit stream indexed by Phi-index.
Integer f_digit(const Position& m);

/// Digit set V(n).
struct DigitSet {
  std::optional<Integer> singleton;  // small-base position: {F}
  std::optional<IDescriptor> large;  // large-base position: I_{i(n)}
  Index i = 0;

  bool contains(const Integer& d) const;
};

DigitSet v_of(const Position& n);

IDescriptor i_descriptor(Index i, mpfr_prec_t precision_cap = default_precision_cap());

/// log |I_i| / log beta_i as a certified enclosure.
Interval dim_ratio(Index i, mpfr_prec_t precision = 256);

struct ThetaCheck {
  bool contains = true;
  std::optional<Position> first_violation;
};

ThetaCheck theta_contains(const DigitPrefix& prefix);

/// One point of Theta restricted to [start, start + count): small-base
/// digits are F, large-base digits uniform over I_{i(n)} keyed by (seed, n).
DigitPrefix theta_sample(std::uint64_t seed, const Position& start, std::size_t count);
Integer theta_digit(std::uint64_t seed, const Position& n);

/// First position of X_3; every earlier large-base position has I_2 = {}.
Position first_sampleable_position();

}  // namespace qcantor::construction
