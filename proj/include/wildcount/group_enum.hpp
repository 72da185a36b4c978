#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

#include "wildcount/util.hpp"

namespace wildcount {

// Subgroup machinery for small abelian groups whose elements are indices
// [0, size) with a multiplication callback. Subgroups are canonical sorted
// element lists.

// Closure of sorted subgroup H (containing the identity) with one more
// generator g: the union of cosets H g^k until g^k falls back in.
template <class Mul>
std::vector<std::uint32_t> extend_abelian(const std::vector<std::uint32_t>& H, std::uint32_t g,
                                          Mul&& mul) {
    std::set<std::uint32_t> seen(H.begin(), H.end());
    std::vector<std::uint32_t> out(H);
    std::uint32_t pw = g;
    while (!seen.count(pw)) {
        for (std::uint32_t h : H) {
            std::uint32_t e = mul(h, pw);
            if (seen.insert(e).second) out.push_back(e);
        }
        pw = mul(pw, g);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// All subgroups closed under the orbit map: pass the one-element orbit for
// the full subgroup lattice, or an automorphism orbit to restrict to
// invariant subgroups. Join-closure BFS from the trivial subgroup; throws
// resource_error past max_subgroups.
template <class Mul, class OrbitFn>
std::vector<std::vector<std::uint32_t>> enumerate_subgroups(std::uint32_t size, std::uint32_t id,
                                                            Mul&& mul, OrbitFn&& orbit,
                                                            std::uint64_t max_subgroups = 200000) {
    std::set<std::vector<std::uint32_t>> found;
    std::vector<std::vector<std::uint32_t>> queue;
    std::vector<std::uint32_t> trivial{id};
    found.insert(trivial);
    queue.push_back(trivial);
    while (!queue.empty()) {
        std::vector<std::uint32_t> H = std::move(queue.back());
        queue.pop_back();
        std::vector<char> member(size, 0);
        for (std::uint32_t e : H) member[e] = 1;
        for (std::uint32_t x = 0; x < size; ++x) {
            if (member[x]) continue;
            std::vector<std::uint32_t> ext = H;
            for (std::uint32_t g : orbit(x)) ext = extend_abelian(ext, g, mul);
            if (found.insert(ext).second) {
                if (found.size() > max_subgroups)
                    throw resource_error("enumerate_subgroups: subgroup cap exceeded");
                queue.push_back(std::move(ext));
            }
        }
    }
    return {found.begin(), found.end()};
}

// Greedy small generating set of a subgroup given as a sorted element list.
template <class Mul>
std::vector<std::uint32_t> greedy_generators(const std::vector<std::uint32_t>& elements,
                                             std::uint32_t id, Mul&& mul) {
    std::vector<std::uint32_t> gens;
    std::vector<std::uint32_t> span{id};
    for (std::uint32_t e : elements) {
        if (std::binary_search(span.begin(), span.end(), e)) continue;
        gens.push_back(e);
        span = extend_abelian(span, e, mul);
        if (span.size() == elements.size()) break;
    }
    return gens;
}

}  // namespace wildcount
