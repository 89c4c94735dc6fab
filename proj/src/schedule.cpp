#include "drgsb/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drgsb {

RateSchedule::RateSchedule(std::vector<double> t, std::vector<double> delta,
                           std::vector<double> gamma, double delta_head,
                           double gamma_head)
    : t_(std::move(t)), delta_(std::move(delta)), gamma_(std::move(gamma)),
      delta_head_(delta_head), gamma_head_(gamma_head) {
    if (t_.size() != delta_.size() || t_.size() != gamma_.size())
        throw std::invalid_argument("RateSchedule: sample arrays must have equal length");
    for (std::size_t i = 0; i + 1 < t_.size(); ++i)
        if (!(t_[i] < t_[i + 1]))
            throw std::invalid_argument("RateSchedule: times must be strictly increasing");
    if (!t_.empty() && !(t_.front() > 0.0))
        throw std::invalid_argument("RateSchedule: flowing samples require t > 0");
    gamma_log_ = !gamma_.empty();
    for (double g : gamma_)
        if (!(g > 0.0)) { gamma_log_ = false; break; }
    ln_t_.reserve(t_.size());
    for (double tv : t_) ln_t_.push_back(std::log(tv));
    if (gamma_log_) {
        ln_gamma_.reserve(gamma_.size());
        for (double g : gamma_) ln_gamma_.push_back(std::log(g));
    }
}

RateSchedule RateSchedule::constant(double delta, double gamma) {
    return RateSchedule({}, {}, {}, delta, gamma);
}

std::size_t RateSchedule::bracket(double t) const {
    // index i with t_[i] <= t < t_[i+1]; caller guarantees range
    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - t_.begin());
    return i == 0 ? 0 : i - 1;
}

double RateSchedule::delta_at(double t) const {
    if (t_.empty()) return delta_head_;
    if (t < t_.front()) return delta_head_;
    if (t >= t_.back()) return delta_.back();
    const std::size_t i = bracket(t);
    const double x = std::log(t);
    const double w = (x - ln_t_[i]) / (ln_t_[i + 1] - ln_t_[i]);
    return delta_[i] + w * (delta_[i + 1] - delta_[i]);
}

double RateSchedule::gamma_at(double t) const {
    if (t_.empty()) return gamma_head_;
    if (t < t_.front()) return gamma_head_;
    if (t >= t_.back()) return gamma_.back();
    const std::size_t i = bracket(t);
    const double x = std::log(t);
    const double w = (x - ln_t_[i]) / (ln_t_[i + 1] - ln_t_[i]);
    if (gamma_log_)
        return std::exp(ln_gamma_[i] + w * (ln_gamma_[i + 1] - ln_gamma_[i]));
    return gamma_[i] + w * (gamma_[i + 1] - gamma_[i]);
}

} // namespace drgsb
