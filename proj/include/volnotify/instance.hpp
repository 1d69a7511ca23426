#ifndef VOLNOTIFY_INSTANCE_HPP
#define VOLNOTIFY_INSTANCE_HPP

#include <cstddef>
#include <vector>

#include "volnotify/distribution.hpp"

namespace volnotify {

/// Dense row-major matrix of doubles.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), fill) {}
    Matrix(int rows, int cols, std::vector<double> data);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int r, int c) { return data_[index(r, c)]; }
    double operator()(int r, int c) const { return data_[index(r, c)]; }

    const std::vector<double>& data() const { return data_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t index(int r, int c) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(c);
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// An instance of the online volunteer notification problem.
///
/// All indices are zero-based: volunteers v in [0, V), task types s in [0, S),
/// periods t in [0, T). The "no arrival" outcome is not a task type; its
/// probability is the row slack 1 - sum_s arrival(s, t).
///
/// Lower volunteer index means higher priority when several volunteers respond.
class Instance {
public:
    static constexpr double kRowSumTolerance = 1e-9;

    /// arrival_rates is T x S, match_probs is V x S. Rows of arrival_rates must
    /// sum to at most 1; violating instances are rejected, not renormalized.
    Instance(Matrix arrival_rates, Matrix match_probs, InterActivityDistribution dist);

    int horizon() const { return arrivals_.rows(); }
    int volunteers() const { return match_.rows(); }
    int task_types() const { return match_.cols(); }

    double arrival(int s, int t) const { return arrivals_(t, s); }
    double no_arrival(int t) const { return no_arrival_[static_cast<std::size_t>(t)]; }
    double match(int v, int s) const { return match_(v, s); }

    const Matrix& arrival_rates() const { return arrivals_; }
    const Matrix& match_probs() const { return match_; }
    const InterActivityDistribution& distribution() const { return dist_; }

    bool operator==(const Instance& other) const {
        return arrivals_ == other.arrivals_ && match_ == other.match_ && dist_ == other.dist_;
    }

private:
    Matrix arrivals_;
    Matrix match_;
    InterActivityDistribution dist_;
    std::vector<double> no_arrival_;
};

} // namespace volnotify

#endif // VOLNOTIFY_INSTANCE_HPP
