#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "seqbell/common.hpp"
#include "seqbell/qcore.hpp"

// Gaussian-pointer von Neumann measurement engine. A measurement couples the
// system impulsively to a pointer prepared in a Gaussian wavepacket of spread
// sigma; the pointer reading q is then distributed as the mixture
//     p(q) = sum_m w_m Normal(q; lambda_m, sigma^2),  w_m = <psi|Pi_m|psi>,
// and the conditional state update is M_q |psi> / ||.|| with
//     M_q = sum_m phi(q - lambda_m) Pi_m,
// phi being the pointer amplitude. Readings are sampled exactly (branch by
// weight, then additive Normal(0, sigma^2) noise - the same joint law), and
// the update keeps every branch amplitude, which is what preserves coherence
// between branches across a sequence of measurements.
namespace seqbell::meter {

using qcore::Matrix;
using qcore::Observable;
using qcore::StateVector;
using qcore::Vector;

// Initial pointer spread sigma = Delta q(t=0); epsilon = 1/sigma^2.
struct PointerSpec {
    double sigma;

    explicit PointerSpec(double s) : sigma(s) {
        require(std::isfinite(s) && s > 0.0, "pointer sigma must be positive and finite");
    }

    [[nodiscard]] double epsilon() const { return 1.0 / (sigma * sigma); }
    [[nodiscard]] double variance() const { return sigma * sigma; }
};

// One pointer readout. q may lie outside the observable's spectrum range.
struct Reading {
    double q = 0.0;
    std::string label;
};

struct SpectralComponent {
    double eigenvalue;
    Matrix projector;
};

// Spectral form of a Hermitian observable with degenerate eigenvalues merged
// into a single projector (spacing tolerance 1e-9), so mixture weights never
// split a degenerate subspace.
class SpectralDecomp {
  public:
    static constexpr double kMergeTol = 1e-9;

    static SpectralDecomp of(const Observable& o) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(o.matrix());
        check(es.info() == Eigen::Success, "eigendecomposition failed for " + o.label());
        SpectralDecomp d;
        const auto& vals = es.eigenvalues();
        const auto& vecs = es.eigenvectors();
        Eigen::Index i = 0;
        while (i < vals.size()) {
            Eigen::Index j = i + 1;
            while (j < vals.size() && vals(j) - vals(j - 1) < kMergeTol) ++j;
            const auto block = vecs.middleCols(i, j - i);
            d.components_.push_back({vals.segment(i, j - i).mean(), block * block.adjoint()});
            i = j;
        }
        d.validate(o.matrix());
        return d;
    }

    [[nodiscard]] const std::vector<SpectralComponent>& components() const { return components_; }
    [[nodiscard]] std::size_t size() const { return components_.size(); }

  private:
    void validate(const Matrix& original) const {
        const Eigen::Index dim = original.rows();
        Matrix sum = Matrix::Zero(dim, dim);
        Matrix rebuilt = Matrix::Zero(dim, dim);
        for (const auto& c : components_) {
            sum += c.projector;
            rebuilt += c.eigenvalue * c.projector;
        }
        check((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= 1e-10, "projectors do not resolve identity");
        check((rebuilt - original).cwiseAbs().maxCoeff() <= 1e-10, "projectors do not reconstruct observable");
        for (std::size_t a = 0; a < components_.size(); ++a)
            for (std::size_t b = 0; b < components_.size(); ++b) {
                const Matrix prod = components_[a].projector * components_[b].projector;
                const Matrix expect = a == b ? components_[a].projector : Matrix::Zero(dim, dim).eval();
                check((prod - expect).cwiseAbs().maxCoeff() <= 1e-10, "projectors not orthogonal/idempotent");
            }
    }

    std::vector<SpectralComponent> components_;
};

struct MixtureComponent {
    double weight;
    double mean;
    double variance;
};

// Exact marginal reading density as Gaussian-mixture parameters.
struct PointerMixture {
    std::vector<MixtureComponent> components;

    [[nodiscard]] double pdf(double q) const {
        double p = 0.0;
        for (const auto& c : components) {
            const double z = q - c.mean;
            p += c.weight * std::exp(-0.5 * z * z / c.variance) / std::sqrt(2.0 * M_PI * c.variance);
        }
        return p;
    }

    [[nodiscard]] double mean() const {
        double m = 0.0;
        for (const auto& c : components) m += c.weight * c.mean;
        return m;
    }

    [[nodiscard]] double variance() const {
        const double m = mean();
        double v = 0.0;
        for (const auto& c : components) v += c.weight * (c.variance + c.mean * c.mean);
        return v - m * m;
    }
};

namespace detail {

// Scratch buffers so a measurement inside a hot loop performs no allocation.
struct Workspace {
    std::vector<Vector> projected;  // Pi_m |psi>
    std::vector<double> weights;
    Vector updated;

    void resize(std::size_t branches, Eigen::Index dim) {
        if (projected.size() < branches) projected.resize(branches);
        for (auto& v : projected)
            if (v.size() != dim) v.resize(dim);
        weights.resize(branches);
        if (updated.size() != dim) updated.resize(dim);
    }
};

// Branch weights w_m = <psi|Pi_m|psi>; returns total (should be 1).
inline double branch_weights(const Vector& psi, const SpectralDecomp& decomp, Workspace& ws) {
    const auto& comps = decomp.components();
    ws.resize(comps.size(), psi.size());
    double total = 0.0;
    for (std::size_t m = 0; m < comps.size(); ++m) {
        ws.projected[m].noalias() = comps[m].projector * psi;
        const double w = std::max(0.0, std::real(psi.dot(ws.projected[m])));
        ws.weights[m] = w;
        total += w;
    }
    check(total > 1e-12, "branch weights vanished");
    return total;
}

template <class URBG>
std::size_t sample_branch(const std::vector<double>& weights, double total, URBG& rng) {
    const double u = (static_cast<double>(rng() >> 11) * 0x1.0p-53) * total;
    double acc = 0.0;
    for (std::size_t m = 0; m + 1 < weights.size(); ++m) {
        acc += weights[m];
        if (u < acc) return m;
    }
    return weights.size() - 1;
}

// In-place weak measurement on raw amplitudes; returns the reading.
template <class URBG>
double weak_measure_inplace(Vector& psi, const SpectralDecomp& decomp, double sigma, URBG& rng, Workspace& ws) {
    const auto& comps = decomp.components();
    const double total = branch_weights(psi, decomp, ws);
    const std::size_t picked = sample_branch(ws.weights, total, rng);
    std::normal_distribution<double> gauss(0.0, sigma);
    const double q = comps[picked].eigenvalue + gauss(rng);

    // M_q |psi> with the common Gaussian prefactor cancelled and exponents
    // shifted by their minimum to avoid underflow at small sigma.
    const double inv4s2 = 1.0 / (4.0 * sigma * sigma);
    double emin = std::numeric_limits<double>::infinity();
    for (const auto& c : comps) {
        const double d = q - c.eigenvalue;
        emin = std::min(emin, d * d * inv4s2);
    }
    ws.updated.setZero();
    for (std::size_t m = 0; m < comps.size(); ++m) {
        const double d = q - comps[m].eigenvalue;
        const double g = std::exp(-(d * d * inv4s2 - emin));
        ws.updated += g * ws.projected[m];
    }
    const double n = ws.updated.norm();
    check(n > 0.0, "zero-norm post-measurement state");
    psi = ws.updated / n;
    return q;
}

// In-place projective measurement; returns the exact eigenvalue read.
template <class URBG>
double strong_measure_inplace(Vector& psi, const SpectralDecomp& decomp, URBG& rng, Workspace& ws) {
    const double total = branch_weights(psi, decomp, ws);
    const std::size_t picked = sample_branch(ws.weights, total, rng);
    psi = ws.projected[picked] / std::sqrt(ws.weights[picked]);
    return decomp.components()[picked].eigenvalue;
}

}  // namespace detail

template <class URBG>
std::pair<Reading, StateVector> weak_measure(const StateVector& state, const Observable& o, const PointerSpec& ptr,
                                             URBG& rng) {
    require(o.dim() == state.dim(), "observable/state dimension mismatch");
    const SpectralDecomp decomp = SpectralDecomp::of(o);
    Vector psi = state.amplitudes();
    detail::Workspace ws;
    const double q = detail::weak_measure_inplace(psi, decomp, ptr.sigma, rng, ws);
    return {Reading{q, o.label()}, StateVector(std::move(psi))};
}

// Projective measurement as its own code path: the reading is the exact
// eigenvalue, with no Gaussian underflow issues near sigma -> 0.
template <class URBG>
std::pair<Reading, StateVector> strong_measure(const StateVector& state, const Observable& o, URBG& rng) {
    require(o.dim() == state.dim(), "observable/state dimension mismatch");
    const SpectralDecomp decomp = SpectralDecomp::of(o);
    Vector psi = state.amplitudes();
    detail::Workspace ws;
    const double q = detail::strong_measure_inplace(psi, decomp, rng, ws);
    return {Reading{q, o.label()}, StateVector(std::move(psi))};
}

inline PointerMixture pointer_pdf(const StateVector& state, const Observable& o, const PointerSpec& ptr) {
    require(o.dim() == state.dim(), "observable/state dimension mismatch");
    const SpectralDecomp decomp = SpectralDecomp::of(o);
    PointerMixture mix;
    double total = 0.0;
    for (const auto& c : decomp.components()) {
        const Vector proj = c.projector * state.amplitudes();
        const double w = std::max(0.0, std::real(state.amplitudes().dot(proj)));
        mix.components.push_back({w, c.eigenvalue, ptr.variance()});
        total += w;
    }
    check(std::abs(total - 1.0) <= 1e-12, "mixture weights must sum to one");
    return mix;
}

}  // namespace seqbell::meter
