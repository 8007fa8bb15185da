#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "nbl/bitstring.hpp"
#include "nbl/hyperspace.hpp"
#include "nbl/opcount.hpp"
#include "nbl/state.hpp"

namespace nbl {

enum class Exec { serial, parallel };

/// Time-average readout C = (1/M) sum_t S(t) H_probe(t) plus everything a
/// caller needs to interpret it.
struct CorrelatorEstimate {
    std::complex<double> value;
    std::uint64_t steps = 0;
    double threshold = 0.5;
    bool decision = false;
    /// Hoeffding tail exp(-M theta^2 / (2 V)) with V the squared per-step
    /// range of the product signal and theta the threshold margin.
    double bound = 1.0;
    /// Sample standard deviation of the per-step products over sqrt(M).
    double std_error = 0.0;
};

namespace detail {

/// Summation order depends only on the element count, so serial and
/// parallel fills reduce to identical bits.
template <class T>
T pairwise_sum(const T* v, std::size_t n) {
    if (n == 0) return T{};
    if (n <= 16) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

template <class Real, class Fn>
void fill_products(std::vector<std::complex<Real>>& buf, std::uint64_t steps, Fn&& fn,
                   OpCount& ops, Exec exec) {
    buf.resize(steps);
#ifdef _OPENMP
    if (exec == Exec::parallel) {
        OpCount total;
#pragma omp parallel
        {
            OpCount local;
#pragma omp for schedule(static)
            for (std::int64_t t = 0; t < static_cast<std::int64_t>(steps); ++t)
                buf[static_cast<std::size_t>(t)] = fn(static_cast<std::uint64_t>(t), local);
#pragma omp critical
            total += local;
        }
        ops += total;
        return;
    }
#else
    (void)exec;
#endif
    for (std::uint64_t t = 0; t < steps; ++t) buf[t] = fn(t, ops);
}

template <class Real>
CorrelatorEstimate finalize(const std::vector<std::complex<Real>>& buf, double range,
                            double threshold) {
    const std::size_t m = buf.size();
    const std::complex<Real> mean = pairwise_sum(buf.data(), m) / static_cast<Real>(m);

    std::vector<Real> dev(m);
    for (std::size_t i = 0; i < m; ++i) dev[i] = std::norm(buf[i] - mean);
    const Real ss = pairwise_sum(dev.data(), m);
    const double var = m > 1 ? static_cast<double>(ss) / static_cast<double>(m - 1) : 0.0;

    CorrelatorEstimate est;
    est.value = {static_cast<double>(mean.real()), static_cast<double>(mean.imag())};
    est.steps = m;
    est.threshold = threshold;
    est.decision = est.value.real() > threshold;
    est.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(m));
    const double expo =
        static_cast<double>(m) * threshold * threshold / (2.0 * range * range);
    est.bound = std::max(std::exp(-expo), std::numeric_limits<double>::min());
    return est;
}

template <class Real, class StateT>
CorrelatorEstimate correlate(const NoiseBitSystem& sys, const StateT& state,
                             const BitString& probe, std::uint64_t steps, OpCount& ops,
                             Exec exec, double threshold, double range) {
    if (steps == 0)
        throw std::invalid_argument("correlate: need at least one step");
    if (probe.size() != sys.bit_count())
        throw std::invalid_argument("correlate: probe length mismatch");
    std::vector<std::complex<Real>> buf;
    fill_products<Real>(
        buf, steps,
        [&](std::uint64_t t, OpCount& o) -> std::complex<Real> {
            const auto s = superposition_value(sys, state, t, o);
            const double h = hyperspace_value(sys, probe, t, o);
            ++o.mul;
            return std::complex<Real>(s) * static_cast<Real>(h);
        },
        ops, exec);
    return finalize(buf, range, threshold);
}

} // namespace detail

/// Membership readout: C concentrates on 1 when the probe string is in the
/// superposition and on 0 when it is not; decision thresholds the real part.
inline CorrelatorEstimate measure_membership(const NoiseBitSystem& sys, const ExplicitState& state,
                                             const BitString& probe, std::uint64_t steps,
                                             OpCount& ops, Exec exec = Exec::parallel,
                                             double threshold = 0.5) {
    return detail::correlate<double>(sys, state, probe, steps, ops, exec, threshold,
                                     static_cast<double>(state.members.size()));
}

template <class Real>
CorrelatorEstimate measure_membership(const NoiseBitSystem& sys,
                                      const ProductFormState<Real>& state, const BitString& probe,
                                      std::uint64_t steps, OpCount& ops,
                                      Exec exec = Exec::parallel, double threshold = 0.5) {
    return detail::correlate<Real>(sys, state, probe, steps, ops, exec, threshold,
                                   static_cast<double>(state.range_bound()));
}

inline CorrelatorEstimate measure_membership(const NoiseBitSystem& sys,
                                             const SuperpositionState& state,
                                             const BitString& probe, std::uint64_t steps,
                                             OpCount& ops, Exec exec = Exec::parallel,
                                             double threshold = 0.5) {
    return std::visit(
        [&](const auto& s) { return measure_membership(sys, s, probe, steps, ops, exec, threshold); },
        state);
}

/// Correlator estimate of one amplitude: C -> a_c since distinct product
/// references are orthogonal in the time average.
template <class Real>
CorrelatorEstimate amplitude_estimate(const NoiseBitSystem& sys,
                                      const ProductFormState<Real>& state, const BitString& c,
                                      std::uint64_t steps, OpCount& ops,
                                      Exec exec = Exec::parallel, double threshold = 0.5) {
    return detail::correlate<Real>(sys, state, c, steps, ops, exec, threshold,
                                   static_cast<double>(state.range_bound()));
}

} // namespace nbl
