#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "enumerate.hpp"
#include "reeb/core.hpp"

using namespace reeb;
using reeb::testing::EnumOptions;
using reeb::testing::enumerate_good_graphs;

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Independent count: every acyclic graph has a labelling with edges i -> j for i < j, so enumerate
// edge multisets over such pairs and reduce each one to the least relabelled edge list.
std::map<int, std::size_t> brute_force_counts(int max_n, bool relaxed) {
    std::map<int, std::size_t> counts;
    for (int n = 2; n <= max_n; ++n) {
        std::vector<std::pair<int, int>> pairs;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
        std::vector<int> perm(n);
        std::set<EdgeList> seen;
        std::vector<int> in(n, 0), out(n, 0);
        EdgeList cur;
        int cap = relaxed ? 5 : 3;

        auto accept = [&]() {
            int high = 0;
            for (int v = 0; v < n; ++v) {
                int d = in[v] + out[v];
                if (d == 0) return;
                if (d >= 2 && (in[v] == 0 || out[v] == 0)) return;
                if (d > 3) ++high;
            }
            if (high > 1) return;
            std::vector<int> comp(n);
            std::iota(comp.begin(), comp.end(), 0);
            std::function<int(int)> find = [&](int x) { return comp[x] == x ? x : comp[x] = find(comp[x]); };
            for (auto [a, b] : cur) comp[find(a)] = find(b);
            for (int v = 1; v < n; ++v)
                if (find(v) != find(0)) return;
            EdgeList best;
            std::iota(perm.begin(), perm.end(), 0);
            do {
                EdgeList e;
                for (auto [a, b] : cur) e.push_back({perm[a], perm[b]});
                std::sort(e.begin(), e.end());
                if (best.empty() || e < best) best = e;
            } while (std::next_permutation(perm.begin(), perm.end()));
            seen.insert(best);
        };

        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == pairs.size()) {
                accept();
                return;
            }
            auto [a, b] = pairs[k];
            int added = 0;
            while (true) {
                rec(k + 1);
                if (out[a] + in[a] + 1 > cap || out[b] + in[b] + 1 > cap) break;
                ++out[a], ++in[b], ++added;
                cur.push_back({a, b});
            }
            for (; added > 0; --added) --out[a], --in[b], cur.pop_back();
        };
        rec(0);
        counts[n] = seen.size();
    }
    return counts;
}

std::map<int, std::size_t> enumerated_counts(int max_n, bool relaxed) {
    EnumOptions opt;
    opt.max_vertices = max_n;
    opt.relaxed = relaxed;
    std::map<int, std::size_t> counts;
    enumerate_good_graphs(opt, [&](const ReebGraph& g) {
        ASSERT_TRUE(is_good_orientation(g));
        ++counts[static_cast<int>(g.vertex_count())];
    });
    return counts;
}

}  // namespace

TEST(Enumerate, MatchesBruteForce) { EXPECT_EQ(enumerated_counts(6, false), brute_force_counts(6, false)); }

TEST(Enumerate, RelaxedMatchesBruteForce) { EXPECT_EQ(enumerated_counts(5, true), brute_force_counts(5, true)); }

TEST(Enumerate, KnownCounts) {
    auto c = enumerated_counts(8, false);
    std::map<int, std::size_t> expect{{2, 1}, {3, 1}, {4, 4}, {5, 8}, {6, 29}, {7, 90}, {8, 367}};
    EXPECT_EQ(c, expect);
}

TEST(Enumerate, NoDuplicates) {
    std::set<std::string> codes;
    std::size_t n = 0;
    EnumOptions opt;
    opt.max_vertices = 8;
    opt.relaxed = true;
    enumerate_good_graphs(opt, [&](const ReebGraph& g) {
        codes.insert(reeb::testing::canonical_code(g));
        ++n;
    });
    EXPECT_EQ(codes.size(), n);
}
