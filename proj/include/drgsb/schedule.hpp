// schedule.hpp — time-dependent rate schedule (t, Delta(t), gamma(t)) consumed
// by the dynamics solvers. Built from a flow trajectory via Lambda = eta/t.

#pragma once

#include <cstddef>
#include <vector>

namespace drgsb {

class RateSchedule {
public:
    // Flowing samples must have strictly increasing t. Head values apply for
    // t < t.front(), frozen terminal values for t > t.back().
    RateSchedule(std::vector<double> t, std::vector<double> delta,
                 std::vector<double> gamma, double delta_head, double gamma_head);

    // Schedule with no flow: constant rates for all t.
    static RateSchedule constant(double delta, double gamma);

    double delta_at(double t) const;
    double gamma_at(double t) const;

    double head_time() const { return t_.empty() ? 0.0 : t_.front(); }
    double tail_time() const { return t_.empty() ? 0.0 : t_.back(); }
    double delta_inf() const { return t_.empty() ? delta_head_ : delta_.back(); }
    double gamma_inf() const { return t_.empty() ? gamma_head_ : gamma_.back(); }
    double delta_head() const { return delta_head_; }
    double gamma_head() const { return gamma_head_; }

    const std::vector<double>& times() const { return t_; }
    const std::vector<double>& deltas() const { return delta_; }
    const std::vector<double>& gammas() const { return gamma_; }

private:
    std::size_t bracket(double t) const;

    std::vector<double> t_, delta_, gamma_;
    std::vector<double> ln_t_, ln_gamma_;  // cached for interpolation
    double delta_head_, gamma_head_;
    bool gamma_log_;  // gamma interpolated log-linearly when positive throughout
};

} // namespace drgsb
