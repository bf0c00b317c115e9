#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "eulerps/field.hpp"
#include "eulerps/symmetry.hpp"

namespace eulerps {

struct CheckpointCorrupt : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingCheckpoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Time-Taylor coefficients u_0..u_N of the solution, u_0 being the datum.
/// reflection_parity records whether the datum has the reflection
/// pseudo-symmetry; the coefficients then alternate purely real / purely
/// imaginary with the order, which the recursion asserts.
struct TaylorSeries {
    std::string datum_id;
    std::vector<FourierField> coefficients;
    bool reflection_parity = false;

    int highest_order() const { return static_cast<int>(coefficients.size()) - 1; }
};

TaylorSeries make_series(std::string datum_id, FourierField datum);

/// The 6-mode Behr-Necas-Wu initial velocity: coefficients (1,-1,0),
/// (1,0,-1), (0,1,-1) at +-(1,1,0), +-(1,0,1), +-(0,1,1), all real.
FourierField bnw_datum();

/// Projected Euler bilinear map in Fourier space,
///   P(v,w)_k = -i sum_h (v_h . (k-h)) L_k w_{k-h},
/// computed exactly over the finite supports. The k = 0 bucket is discarded
/// (it is exactly zero for divergence-free real inputs; asserted in debug).
FourierField bilinear_p(const FourierField& v, const FourierField& w);

struct ExtendOptions {
    const SymmetryProfile* profile = nullptr;  // orbit-reduced recursion when set
    std::string checkpoint_dir{};              // per-order checkpoint files when nonempty
    int threads = 1;
    /// Called after each completed order: (order, stored modes, seconds).
    std::function<void(int, std::size_t, double)> progress{};
};

/// Extends the series to target_order with the exact recursion
///   u_j = (1/j) sum_{l=0}^{j-1} P(u_l, u_{j-l-1}).
/// With a profile, only orbit representatives are convolved and the orbits
/// are filled through the symmetry relations; the result is bit-identical
/// with or without a profile and for any thread count.
TaylorSeries taylor_extend(const TaylorSeries& series, int target_order,
                           const ExtendOptions& opts = {});

// --- checkpoint files -------------------------------------------------------
//
// One text file per order, named u_<j>.coeff:
//   order <j> modes <M> parity <none|even-real|odd-imag>
// then M lines in canonical wavevector order, each "k1 k2 k3" followed by six
// rationals re1 im1 re2 im2 re3 im3 in lowest terms -- or three rationals
// (the nonzero parts) when a parity tag applies.

enum class Parity { none, even_real, odd_imag };

std::string checkpoint_filename(int order);
std::string render_checkpoint(int order, const FourierField& f, Parity parity);
void write_checkpoint_file(const std::string& dir, int order, const FourierField& f, Parity parity);

/// Parses and fully revalidates one checkpoint; throws CheckpointCorrupt on
/// any defect (syntax, ordering, non-canonical rationals, field invariants,
/// parity violations).
FourierField parse_checkpoint(std::istream& in, int expected_order);
FourierField load_checkpoint_file(const std::string& path, int expected_order);

/// Highest order j such that u_0..u_j all exist in dir; -1 when none do.
int last_checkpoint_order(const std::string& dir);

/// Loads u_0..u_max_order from dir (all must exist and validate).
TaylorSeries load_series_from_checkpoints(const std::string& dir, const std::string& datum_id,
                                          int max_order);

}  // namespace eulerps
