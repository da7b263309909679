#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fincov/errors.hpp"
#include "fincov/space.hpp"

namespace fincov {

struct CoverElement {
    std::string id;
    PointSet points;
};

/// Finite family of nonempty, pairwise-distinct subsets of a space. Elements
/// that coincide as sets are merged under the lexicographically smallest
/// identifier; elements are kept sorted by identifier.
class SetFamily {
public:
    SetFamily(SpacePtr space, std::vector<CoverElement> elements) : space_(std::move(space)) {
        require(space_ != nullptr, "set family without a space");
        std::sort(elements.begin(), elements.end(),
                  [](const CoverElement& a, const CoverElement& b) { return a.id < b.id; });
        for (std::size_t k = 1; k < elements.size(); ++k) {
            if (elements[k - 1].id == elements[k].id) {
                throw InputError("duplicate element identifier '" + elements[k].id + "'");
            }
        }
        std::map<PointSet, std::size_t> seen;
        for (auto& e : elements) {
            require(e.points.size() == space_->size(),
                    "element '" + e.id + "' is sized for a different space");
            require(e.points.any(), "element '" + e.id + "' is empty");
            if (seen.count(e.points)) continue;
            seen.emplace(e.points, elements_.size());
            ids_.push_back(e.id);
            elements_.push_back(std::move(e));
        }
        containing_.assign(space_->size(), {});
        for (std::size_t k = 0; k < elements_.size(); ++k)
            for_each_member(elements_[k].points, [&](PointIndex x) { containing_[x].push_back(k); });
    }

    const SpacePtr& space() const noexcept { return space_; }
    std::size_t size() const noexcept { return elements_.size(); }
    const std::vector<CoverElement>& elements() const noexcept { return elements_; }
    const CoverElement& operator[](std::size_t k) const { return elements_.at(k); }

    std::optional<std::size_t> find(const std::string& id) const {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
        if (it == ids_.end() || *it != id) return std::nullopt;
        return static_cast<std::size_t>(it - ids_.begin());
    }

    std::optional<std::size_t> find_set(const PointSet& s) const {
        for (std::size_t k = 0; k < elements_.size(); ++k)
            if (elements_[k].points == s) return k;
        return std::nullopt;
    }

    bool contains_set(const PointSet& s) const { return find_set(s).has_value(); }

    /// Indices of the elements containing point x, in identifier order.
    const std::vector<std::size_t>& containing(PointIndex x) const { return containing_.at(x); }

    PointSet union_of_all() const {
        PointSet u(space_->size());
        for (const auto& e : elements_) u |= e.points;
        return u;
    }

    bool covers_space() const { return union_of_all().all(); }

    /// Same family as sets (identifiers ignored).
    bool same_sets(const SetFamily& other) const {
        if (size() != other.size()) return false;
        for (const auto& e : elements_)
            if (!other.contains_set(e.points)) return false;
        return true;
    }

private:
    SpacePtr space_;
    std::vector<CoverElement> elements_;
    std::vector<std::string> ids_;
    std::vector<std::vector<std::size_t>> containing_;
};

/// A set family whose union is the whole space.
class Cover : public SetFamily {
public:
    Cover(SpacePtr space, std::vector<CoverElement> elements)
        : SetFamily(std::move(space), std::move(elements)) {
        if (!covers_space()) {
            auto missing = ~union_of_all();
            throw InputError("family does not cover point '" +
                             this->space()->name(missing.find_first()) + "'");
        }
    }

    explicit Cover(const SetFamily& family) : SetFamily(family) {
        require(covers_space(), "family does not cover the space");
    }
};

} // namespace fincov
