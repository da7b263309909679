#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace fincov {

using PointIndex = std::size_t;

/// Subset of a finite space, stored as a bitset sized to the space.
using PointSet = boost::dynamic_bitset<std::uint64_t>;

inline PointSet empty_set(std::size_t universe) { return PointSet(universe); }

inline PointSet full_set(std::size_t universe) {
    PointSet s(universe);
    s.set();
    return s;
}

inline PointSet make_set(std::size_t universe, std::initializer_list<PointIndex> members) {
    PointSet s(universe);
    for (auto m : members) s.set(m);
    return s;
}

inline PointSet make_set(std::size_t universe, const std::vector<PointIndex>& members) {
    PointSet s(universe);
    for (auto m : members) s.set(m);
    return s;
}

inline std::vector<PointIndex> members(const PointSet& s) {
    std::vector<PointIndex> out;
    out.reserve(s.count());
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) out.push_back(i);
    return out;
}

template <typename F>
void for_each_member(const PointSet& s, F&& f) {
    for (auto i = s.find_first(); i != PointSet::npos; i = s.find_next(i)) f(i);
}

} // namespace fincov
