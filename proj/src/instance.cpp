#include "volnotify/instance.hpp"

#include <cmath>
#include <string>

#include "volnotify/errors.hpp"

namespace volnotify {

Matrix::Matrix(int rows, int cols, std::vector<double> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows < 0 || cols < 0 ||
        data_.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols)) {
        throw DimensionError("matrix data does not match its shape");
    }
}

namespace {

bool is_probability(double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; }

} // namespace

Instance::Instance(Matrix arrival_rates, Matrix match_probs, InterActivityDistribution dist)
    : arrivals_(std::move(arrival_rates)), match_(std::move(match_probs)), dist_(std::move(dist)) {
    if (arrivals_.rows() < 1) throw ValidationError("horizon must be at least 1 period");
    if (match_.rows() < 1) throw ValidationError("need at least one volunteer");
    if (match_.cols() < 1) throw ValidationError("need at least one task type");
    if (arrivals_.cols() != match_.cols()) {
        throw DimensionError("arrival rates have " + std::to_string(arrivals_.cols()) +
                             " task types but match probabilities have " + std::to_string(match_.cols()));
    }
    for (double p : match_.data()) {
        if (!is_probability(p)) throw ValidationError("match probabilities must lie in [0, 1]");
    }
    no_arrival_.resize(static_cast<std::size_t>(horizon()));
    for (int t = 0; t < horizon(); ++t) {
        double total = 0.0;
        for (int s = 0; s < task_types(); ++s) {
            const double rate = arrivals_(t, s);
            if (!is_probability(rate)) throw ValidationError("arrival rates must lie in [0, 1]");
            total += rate;
        }
        if (total > 1.0 + kRowSumTolerance) {
            throw ValidationError("arrival rates in period " + std::to_string(t + 1) + " sum to " +
                                  std::to_string(total) + " > 1");
        }
        no_arrival_[static_cast<std::size_t>(t)] = std::max(0.0, 1.0 - total);
    }
}

} // namespace volnotify
