#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "eulerps/rational.hpp"
#include "eulerps/wavevector.hpp"

namespace eulerps {

struct FieldError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergenceViolation : FieldError {
    using FieldError::FieldError;
};
struct MeanViolation : FieldError {
    using FieldError::FieldError;
};
struct ConjugacyViolation : FieldError {
    using FieldError::FieldError;
};
struct DuplicateMode : FieldError {
    using FieldError::FieldError;
};

/// One Fourier coefficient: a complex 3-vector with exact rational parts.
struct ComplexVec3 {
    std::array<Rational, 3> re{};
    std::array<Rational, 3> im{};

    bool is_zero() const;
    bool is_real() const { return sgn(im[0]) == 0 && sgn(im[1]) == 0 && sgn(im[2]) == 0; }
    bool is_imaginary() const { return sgn(re[0]) == 0 && sgn(re[1]) == 0 && sgn(re[2]) == 0; }
    ComplexVec3 conjugate() const;
    ComplexVec3 negate() const;
    bool operator==(const ComplexVec3& o) const { return re == o.re && im == o.im; }
};

using ModeEntry = std::pair<WaveVector, ComplexVec3>;

/// Sparse zero-mean divergence-free vector field on the 3-torus, stored as
/// Fourier coefficients in canonical (lexicographic) wavevector order.
/// Invariants, checked at construction:
///   - no entry at k = 0
///   - k . c = 0 exactly for every stored (k, c), both parts
///   - the coefficient at -k is present and equals conj(c)
///   - no stored coefficient is the zero vector
/// Immutable after construction; safe to share across threads.
class FourierField {
  public:
    FourierField() = default;

    /// Validating constructor. Zero coefficients in the input are dropped;
    /// everything else must satisfy the invariants above.
    static FourierField validated(std::vector<ModeEntry> entries);

    /// Wraps entries that are already sorted, deduplicated and known to
    /// satisfy the invariants (results of exact internal computations).
    static FourierField from_sorted_unchecked(std::vector<ModeEntry> entries);

    const std::vector<ModeEntry>& modes() const { return modes_; }
    std::size_t size() const { return modes_.size(); }
    bool empty() const { return modes_.empty(); }

    /// Binary search; nullptr when k is not in the support.
    const ComplexVec3* find(const WaveVector& k) const;

    bool operator==(const FourierField& o) const { return modes_ == o.modes_; }

    /// Re-checks every invariant; used by checkpoint loading and tests.
    void check_invariants() const;

  private:
    explicit FourierField(std::vector<ModeEntry> entries) : modes_(std::move(entries)) {}
    std::vector<ModeEntry> modes_;
};

/// Validated construction from an arbitrary entry list.
FourierField make_field(std::vector<ModeEntry> entries);

/// Projection of c onto the orthogonal complement of k; the identity for
/// k = 0. Exact.
ComplexVec3 leray_project(const WaveVector& k, const ComplexVec3& c);

/// alpha*v + beta*w with exact cancellation; entries that vanish are removed.
FourierField linear_combine(const Rational& alpha, const FourierField& v, const Rational& beta,
                            const FourierField& w);

/// max over stored k of max(|k1|,|k2|,|k3|); 0 for the empty field.
int support_radius(const FourierField& v);

/// Reads the datum file format: one mode per line,
///   k1 k2 k3 re1 im1 re2 im2 re3 im3
/// with rationals as "num/den" or bare integers; '#' starts a comment.
/// Both members of each +-k pair must be listed.
FourierField read_datum(std::istream& in);
FourierField read_datum_file(const std::string& path);

}  // namespace eulerps
