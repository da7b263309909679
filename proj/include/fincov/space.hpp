#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fincov/errors.hpp"
#include "fincov/point_set.hpp"
#include "fincov/rational.hpp"

namespace fincov {

/// Dense symmetric n x n table of exact distances, indexed by point index.
class DistanceTable {
public:
    DistanceTable() = default;
    explicit DistanceTable(std::size_t n) : n_(n), d_(n * n) {}

    std::size_t size() const noexcept { return n_; }
    const Rational& operator()(PointIndex a, PointIndex b) const { return d_[a * n_ + b]; }
    void set(PointIndex a, PointIndex b, const Rational& value) {
        d_[a * n_ + b] = value;
        d_[b * n_ + a] = value;
    }

    friend bool operator==(const DistanceTable&, const DistanceTable&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Rational> d_;
};

/// Returns an empty string when the metric axioms hold exactly, otherwise a
/// description of the first violation.
inline std::string metric_axiom_violation(const DistanceTable& d,
                                          const std::vector<std::string>& names) {
    const auto n = d.size();
    for (PointIndex a = 0; a < n; ++a) {
        if (d(a, a) != 0) return "d(" + names[a] + "," + names[a] + ") != 0";
        for (PointIndex b = 0; b < n; ++b) {
            if (d(a, b) != d(b, a)) return "asymmetric at " + names[a] + "," + names[b];
            if (a != b && d(a, b) <= 0) return "non-positive distance " + names[a] + "," + names[b];
        }
    }
    for (PointIndex a = 0; a < n; ++a)
        for (PointIndex b = 0; b < n; ++b)
            for (PointIndex c = 0; c < n; ++c)
                if (d(a, c) > d(a, b) + d(b, c))
                    return "triangle inequality fails for " + names[a] + "," + names[b] + "," +
                           names[c];
    return {};
}

/// Finite point set with opaque string identifiers, ordered lexicographically;
/// a point's index is its rank in that order. Optionally carries an exact metric.
class FiniteSpace {
public:
    explicit FiniteSpace(std::vector<std::string> points,
                         std::optional<DistanceTable> metric = std::nullopt)
        : points_(std::move(points)) {
        require(!points_.empty(), "a space needs at least one point");
        std::sort(points_.begin(), points_.end());
        require(std::adjacent_find(points_.begin(), points_.end()) == points_.end(),
                "duplicate point identifier");
        if (metric) set_metric(std::move(*metric));
    }

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<std::string>& points() const noexcept { return points_; }
    const std::string& name(PointIndex i) const { return points_.at(i); }

    std::optional<PointIndex> find(std::string_view name) const {
        auto it = std::lower_bound(points_.begin(), points_.end(), name);
        if (it == points_.end() || *it != name) return std::nullopt;
        return static_cast<PointIndex>(it - points_.begin());
    }

    PointIndex index_of(std::string_view name) const {
        auto i = find(name);
        if (!i) throw InputError("unknown point '" + std::string(name) + "'");
        return *i;
    }

    PointSet subset(const std::vector<std::string>& names) const {
        PointSet s(size());
        for (const auto& n : names) s.set(index_of(n));
        return s;
    }

    std::vector<std::string> names_of(const PointSet& s) const {
        std::vector<std::string> out;
        for_each_member(s, [&](PointIndex i) { out.push_back(points_[i]); });
        return out;
    }

    bool has_metric() const noexcept { return metric_.has_value(); }
    const DistanceTable& metric() const {
        if (!metric_) throw InputError("space has no metric");
        return *metric_;
    }
    const Rational& distance(PointIndex a, PointIndex b) const { return metric()(a, b); }

    /// Copy of this space carrying the given metric (validated).
    FiniteSpace with_metric(DistanceTable metric) const {
        FiniteSpace copy(*this);
        copy.set_metric(std::move(metric));
        return copy;
    }

    FiniteSpace without_metric() const {
        FiniteSpace copy(*this);
        copy.metric_.reset();
        return copy;
    }

    /// Points within distance strictly less than r of x.
    PointSet open_ball(PointIndex x, const Rational& r) const {
        PointSet b(size());
        for (PointIndex z = 0; z < size(); ++z)
            if (distance(x, z) < r) b.set(z);
        return b;
    }

    friend bool operator==(const FiniteSpace&, const FiniteSpace&) = default;

private:
    void set_metric(DistanceTable metric) {
        require(metric.size() == points_.size(), "metric table size does not match the space");
        auto why = metric_axiom_violation(metric, points_);
        require(why.empty(), "invalid metric: " + why);
        metric_ = std::move(metric);
    }

    std::vector<std::string> points_;
    std::optional<DistanceTable> metric_;
};

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr make_space(std::vector<std::string> points,
                           std::optional<DistanceTable> metric = std::nullopt) {
    return std::make_shared<const FiniteSpace>(std::move(points), std::move(metric));
}

} // namespace fincov
