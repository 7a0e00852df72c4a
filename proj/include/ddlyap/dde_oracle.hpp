#pragma once

#include <cstddef>
#include <vector>

#include "ddlyap/dense_matrix.hpp"
#include "ddlyap/system_spec.hpp"

namespace ddlyap {

// Matrix-valued trajectory sampled on the uniform grid start + k * step.
struct SampledTrajectory {
    double start = 0.0;
    double step = 0.0;
    std::vector<DenseMatrix> samples;

    // Sample lookup by time. Times at least half a step before `start`
    // return the zero matrix — the trajectory's pre-initial history is
    // identically zero. Times inside the sampled range must land on the
    // grid (GridError otherwise), as must times beyond the last sample.
    DenseMatrix value_at(double t) const;

    double end_time() const { return start + step * (samples.empty() ? 0 : samples.size() - 1); }
};

// Lyapunov matrix samples U(tau) for tau = -h..h on a uniform tau grid.
struct LyapunovSamples {
    double tau_step = 0.0;
    std::vector<double> taus;
    std::vector<DenseMatrix> values;
};

struct OracleSettings {
    double dt = 1e-3;              // integration step; must divide h
    double tau_step = 1e-2;        // output grid; must be a multiple of dt and divide h
    double decay_threshold = 1e-8; // ||Phi||_F level treated as fully decayed
    std::size_t horizon_cap = 200; // give up after this many delay intervals
};

// Everything the definition-based computation produces: the truncation
// horizon, the Lyapunov samples, and the three property residuals that
// certify them.
struct OracleResult {
    double decay_time = 0.0; // first multiple of h with ||Phi||_F below threshold
    double decay_norm = 0.0; // ||Phi(decay_time)||_F actually observed
    double horizon = 0.0;    // trajectory was integrated up to decay_time + h
    LyapunovSamples samples;
    double dynamic_residual = 0.0;
    double symmetry_residual = 0.0;
    double algebraic_residual = 0.0;
};

// Integrates the fundamental matrix Phi on [0, t_end]: Phi(0) = I, zero for
// t < 0, advanced by the full delay dynamics (point delay plus distributed
// kernel). Classical fourth-order Runge-Kutta with fixed step dt; the
// distributed integral uses a trapezoid rule that tracks the truncated
// support of the history exactly, including at half-step stages. Throws
// InstabilityError if the trajectory exceeds 1e12 in any entry.
SampledTrajectory fundamental_matrix(const SystemSpec& spec, double t_end, double dt);

// Smallest multiple of h at which ||Phi||_F drops below `threshold`
// (threshold must lie in (0, 1)). Throws InstabilityError if this does not
// happen within horizon_cap delay intervals — without decay the defining
// integral for the Lyapunov matrix diverges and no finite truncation is
// meaningful.
double decay_time(const SystemSpec& spec, double threshold = 1e-8, double dt = 1e-3,
                  std::size_t horizon_cap = 200);

// U(tau) = integral of Phi(t)^T W Phi(t + tau) over t in [0, t_max] by
// composite trapezoid on the trajectory's grid, zero-extending Phi below 0.
// `phi` must start at 0 and reach at least t_max + h.
LyapunovSamples lyapunov_by_definition(const SystemSpec& spec, const SampledTrajectory& phi,
                                       double t_max, double tau_step);

// Worst Frobenius mismatch, over interior tau in (0, h), between the central
// difference U'(tau) and U(tau) A0 + U(tau - h) A1 + integral of
// U(tau + theta) G(theta), the defining delay dynamics of U.
double dynamic_residual(const SystemSpec& spec, const LyapunovSamples& samples);

// Worst Frobenius mismatch of U(-tau) = U(tau)^T across the sampled grid.
double symmetry_residual(const LyapunovSamples& samples);

// Frobenius norm of W + U(0) A0 + A0^T U(0) + U(-h) A1 + A1^T U(h) plus the
// two distributed-kernel integrals — the value condition U must satisfy at
// tau = 0.
double algebraic_residual(const SystemSpec& spec, const LyapunovSamples& samples);

// Full pipeline: find the decay time, integrate one extra delay interval,
// form the Lyapunov samples, and evaluate all three residuals.
OracleResult run_oracle(const SystemSpec& spec, const OracleSettings& settings = {});

} // namespace ddlyap
