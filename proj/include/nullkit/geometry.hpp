#pragma once

#include <span>
#include <vector>

#include "nullkit/blackbox.hpp"
#include "nullkit/exact.hpp"
#include "nullkit/poly.hpp"

namespace nullkit {

/// The sampled linear/affine forms never come out degenerate (coefficients
/// are drawn from zero-free sets), but jointly rank-deficient batches do
/// happen and are retried; this error carries that signal.
struct RankDeficient : Error {
    using Error::Error;
};

/// An affine-linear polynomial sum_i coeffs[i] * x_i + constant with at
/// least one nonzero variable coefficient.
struct LinearForm {
    FieldCtxPtr ctx;
    int n = 0;
    std::vector<FieldElement> coeffs;  // length n, zero outside the support
    FieldElement constant;

    MultiPoly to_poly() const;
    FieldElement eval(std::span<const FieldElement> point) const;
};

enum class SamplePurpose { hn_reduction, generator_reduction, trdeg_point };

/// Sample-set sizes behind the randomized reductions, targeting a failure
/// budget of 1/6 per stage:
///   hn_reduction        6 * (n - r) * prod d_i
///   generator_reduction 6 * d^((r+1) * m)
///   trdeg_point         18 * n * prod d_i
/// Throws when the exact value does not fit 64 bits (far past desk scale).
std::uint64_t required_sample_size(SamplePurpose purpose, int n, int m, int r,
                                   std::span<const std::int64_t> degs);

/// `count` affine forms with every coefficient (variables in `support`,
/// plus the constant) drawn i.i.d. from S. Empty support means all n
/// variables.
std::vector<LinearForm> sample_hyperplanes(int n, int count, const SampleSet& s, Rng& rng,
                                           const std::vector<int>& support = {});

/// AffineSubstitution (A, b) whose image {Az + b} is exactly the common
/// zero set of the given n-r forms: columns of A span the solution space
/// of the homogeneous parts, b is a particular solution. Throws
/// RankDeficient when the linear parts are not jointly full rank
/// (probability <= (n-r)/|S| per batch; resample).
AffineSubstitution subspace_substitution(const std::vector<LinearForm>& forms, int n, int r);

struct SampledSubspace {
    std::vector<LinearForm> forms;
    AffineSubstitution sub;
};

/// sample_hyperplanes + subspace_substitution with up to `max_retries`
/// resamples on rank deficiency.
SampledSubspace sample_affine_subspace(int n, int r, const SampleSet& s, Rng& rng,
                                       int max_retries = 8);

/// (r+1) x m coefficient matrix with triangular support: row i mixes only
/// the inputs from position i on (inputs in nonincreasing-degree order).
struct CombinationMatrix {
    Matrix c;

    std::size_t rows() const { return c.rows(); }
    std::size_t cols() const { return c.cols(); }
    bool triangular_support() const;
};

struct ReducedSystem {
    std::vector<MultiPoly> polys;      // r+1 combinations (or the inputs verbatim)
    CombinationMatrix mix;             // g_i = sum_{j>=i} c_ij * f_order[j]
    std::vector<std::size_t> order;    // nonincreasing-degree permutation of the inputs
};

struct ReducedBlackboxes {
    std::vector<Blackbox> boxes;
    CombinationMatrix mix;
    std::vector<std::size_t> order;
};

/// Random triangular combinations g_i = sum_{j=i}^m c_ij f_j (inputs
/// sorted by nonincreasing degree first); preserves the zeroset with
/// probability >= 1 - d^((r+1)m)/|S| and never grows degrees:
/// deg g_i <= d_i. Systems with m <= r+1 members pass through verbatim
/// with an identity matrix.
ReducedSystem generator_reduction(const PolySystem& s, int r, const SampleSet& S, Rng& rng);
ReducedBlackboxes generator_reduction(const BlackboxSystem& s, int r, const SampleSet& S, Rng& rng);

}  // namespace nullkit
