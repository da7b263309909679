#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fincov/cover.hpp"
#include "fincov/errors.hpp"
#include "fincov/space.hpp"

namespace fincov {

/// Surjection p : X -> Y between finite spaces, optionally carrying a
/// designated cover of X (the structure used by chain lifting, deck groups
/// and nerve maps).
class CoverMap {
public:
    CoverMap(SpacePtr domain, SpacePtr codomain, std::vector<PointIndex> mapping,
             std::optional<Cover> structure = std::nullopt)
        : domain_(std::move(domain)), codomain_(std::move(codomain)), mapping_(std::move(mapping)) {
        require(domain_ && codomain_, "map without domain or codomain");
        require(mapping_.size() == domain_->size(), "mapping is not total on the domain");
        fibers_.assign(codomain_->size(), PointSet(domain_->size()));
        for (PointIndex x = 0; x < mapping_.size(); ++x) {
            require(mapping_[x] < codomain_->size(), "mapping leaves the codomain");
            fibers_[mapping_[x]].set(x);
        }
        for (PointIndex y = 0; y < codomain_->size(); ++y)
            require(fibers_[y].any(), "map is not surjective: nothing maps to '" +
                                          codomain_->name(y) + "'");
        if (structure) set_structure(std::move(*structure));
    }

    const SpacePtr& domain() const noexcept { return domain_; }
    const SpacePtr& codomain() const noexcept { return codomain_; }
    PointIndex operator()(PointIndex x) const { return mapping_.at(x); }
    const std::vector<PointIndex>& mapping() const noexcept { return mapping_; }

    const PointSet& fiber(PointIndex y) const { return fibers_.at(y); }

    PointSet image(const PointSet& s) const {
        PointSet out(codomain_->size());
        for_each_member(s, [&](PointIndex x) { out.set(mapping_[x]); });
        return out;
    }

    PointSet preimage(const PointSet& t) const {
        PointSet out(domain_->size());
        for_each_member(t, [&](PointIndex y) { out |= fibers_[y]; });
        return out;
    }

    bool injective_on(const PointSet& s) const { return image(s).count() == s.count(); }

    bool has_structure() const noexcept { return structure_.has_value(); }
    const Cover& structure() const {
        if (!structure_) throw InputError("map has no designated structure");
        return *structure_;
    }

    CoverMap with_structure(Cover structure) const {
        CoverMap copy(*this);
        copy.set_structure(std::move(structure));
        return copy;
    }

private:
    void set_structure(Cover s) {
        require(s.space()->points() == domain_->points(),
                "structure is not a cover of the map's domain");
        structure_ = std::move(s);
    }

    SpacePtr domain_;
    SpacePtr codomain_;
    std::vector<PointIndex> mapping_;
    std::vector<PointSet> fibers_;
    std::optional<Cover> structure_;
};

/// p(S) as a cover of Y. Each image set is named after the lexicographically
/// smallest identifier among the elements mapping onto it.
inline Cover image_cover(const CoverMap& p, const SetFamily& s) {
    std::vector<CoverElement> out;
    for (const auto& e : s.elements()) out.push_back({e.id, p.image(e.points)});
    return Cover(p.codomain(), std::move(out));
}

/// Index in `image` of p(s[k]) for every element k of s.
inline std::vector<std::size_t> image_indices(const CoverMap& p, const SetFamily& s,
                                              const SetFamily& image) {
    std::vector<std::size_t> idx;
    idx.reserve(s.size());
    for (const auto& e : s.elements()) {
        auto k = image.find_set(p.image(e.points));
        ensure(k.has_value(), "image family is missing p(" + e.id + ")");
        idx.push_back(*k);
    }
    return idx;
}

/// Composite q o p (structure of p retained).
inline CoverMap compose(const CoverMap& q, const CoverMap& p) {
    require(q.domain()->points() == p.codomain()->points(), "maps are not composable");
    std::vector<PointIndex> m(p.domain()->size());
    for (PointIndex x = 0; x < m.size(); ++x) m[x] = q(p(x));
    if (p.has_structure()) return CoverMap(p.domain(), q.codomain(), std::move(m), p.structure());
    return CoverMap(p.domain(), q.codomain(), std::move(m));
}

} // namespace fincov
