#include "qsym/partitions.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "qsym/error.hpp"

namespace qsym {

Partition::Partition(std::vector<int> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw InvalidArgument("a partition needs at least one block");
    for (int b : blocks_)
        if (b < 1) throw InvalidArgument("partition blocks must be positive");
    std::sort(blocks_.begin(), blocks_.end(), std::greater<>());
}

int Partition::total() const { return std::accumulate(blocks_.begin(), blocks_.end(), 0); }

std::string to_string(const Partition& p) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < p.blocks().size(); ++i) out << (i ? "," : "") << p.blocks()[i];
    out << ')';
    return out.str();
}

namespace {

void check_range(int n, int cap) {
    if (n < 1 || n > cap)
        throw InvalidArgument("n = " + std::to_string(n) + " outside 1.." + std::to_string(cap));
}

}  // namespace

std::vector<Partition> enumerate_partitions(int n, int cap) {
    check_range(n, cap);
    std::vector<Partition> out;
    // Successor in reverse-lexicographic order: take one from the rightmost
    // block > 1 and spread the remainder in blocks no larger than it.
    std::vector<int> current{n};
    while (true) {
        out.emplace_back(current);
        int ones = 0;
        while (!current.empty() && current.back() == 1) {
            current.pop_back();
            ++ones;
        }
        if (current.empty()) break;
        int k = --current.back();
        int rest = ones + 1;
        while (rest > 0) {
            int take = std::min(k, rest);
            current.push_back(take);
            rest -= take;
        }
    }
    return out;
}

std::uint64_t partition_count(int n, int cap) {
    check_range(n, std::min(cap, kMaxPartitionCount));
    std::vector<std::int64_t> p(static_cast<std::size_t>(n) + 1, 0);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        std::int64_t acc = 0;
        for (int k = 1;; ++k) {
            int g1 = k * (3 * k - 1) / 2;
            if (g1 > m) break;
            int sign = (k % 2 == 1) ? 1 : -1;
            acc += sign * p[static_cast<std::size_t>(m - g1)];
            int g2 = k * (3 * k + 1) / 2;
            if (g2 <= m) acc += sign * p[static_cast<std::size_t>(m - g2)];
        }
        p[static_cast<std::size_t>(m)] = acc;
    }
    return static_cast<std::uint64_t>(p[static_cast<std::size_t>(n)]);
}

StateClass classify_weights(const KmsWeightVector& c, const ClassifyOptions& options) {
    const auto& w = c.weights();
    for (std::size_t v = 0; v < w.size(); ++v)
        if (w[v] <= 0)
            throw NonPositiveWeight("weight of vertex " + std::to_string(v + 1) + " is " + to_string(w[v]));

    std::vector<int> order(w.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return w[a] < w[b]; });

    // groups of vertex indices, in increasing value
    std::vector<std::vector<int>> groups;
    if (options.mode == NumericMode::exact) {
        for (int v : order) {
            if (groups.empty() || w[groups.back().front()] != w[v]) groups.emplace_back();
            groups.back().push_back(v);
        }
    } else {
        const double eps = options.epsilon;
        auto x = c.as_doubles();
        for (int v : order) {
            if (groups.empty() || x[v] - x[groups.back().back()] > eps) groups.emplace_back();
            groups.back().push_back(v);
        }
        for (const auto& g : groups) {
            double spread = x[g.back()] - x[g.front()];
            if (spread > eps) {
                std::ostringstream msg;
                msg << std::setprecision(17) << "weights " << x[g.front()] << " and " << x[g.back()] << " are linked through a chain but differ by "
                    << spread << " > " << eps;
                throw InconsistentGrouping(msg.str());
            }
        }
    }

    std::vector<WeightBlock> blocks;
    for (auto& g : groups) {
        std::sort(g.begin(), g.end());
        WeightBlock b;
        if (options.mode == NumericMode::exact) {
            b.value = w[g.front()];
        } else {
            Rational sum = 0;
            for (int v : g) sum += w[v];
            b.value = sum / static_cast<long long>(g.size());
        }
        for (int v : g) b.vertices.push_back(v + 1);
        blocks.push_back(std::move(b));
    }
    std::sort(blocks.begin(), blocks.end(), [](const WeightBlock& a, const WeightBlock& b) {
        if (a.vertices.size() != b.vertices.size()) return a.vertices.size() > b.vertices.size();
        return a.value > b.value;
    });

    StateClass out;
    std::vector<int> sizes;
    out.assignment.assign(w.size(), -1);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        sizes.push_back(static_cast<int>(blocks[k].vertices.size()));
        for (int v : blocks[k].vertices) out.assignment[static_cast<std::size_t>(v - 1)] = static_cast<int>(k);
    }
    out.partition = Partition(sizes);
    out.blocks = std::move(blocks);
    return out;
}

std::vector<Rational> reconstruct_weights(const StateClass& s) {
    std::vector<Rational> w(s.assignment.size());
    for (std::size_t v = 0; v < w.size(); ++v) w[v] = s.blocks[static_cast<std::size_t>(s.assignment[v])].value;
    return w;
}

namespace {

std::string subscript(int m) {
    static const char* digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
    std::string out;
    for (char ch : std::to_string(m)) out += digits[ch - '0'];
    return out;
}

std::string wreath_name(int m) { return "C(S¹) ≀ S" + subscript(m) + "⁺"; }
std::string wreath_ascii(int m) { return "C(S^1) wr S_" + std::to_string(m) + "^+"; }

}  // namespace

SymmetryDescriptor symmetry_descriptor(const Partition& p) {
    SymmetryDescriptor d;
    const bool several = p.length() > 1;
    std::vector<std::string> names, ascii;
    for (int m : p.blocks()) {
        WreathFactor f;
        f.size = m;
        f.is_trivial_permutation_part = m == 1;
        f.classical_permutation_part = m <= 3;
        f.uncollapsed_name = wreath_name(m);
        f.name = m == 1 ? "C(S¹)" : f.uncollapsed_name;
        f.ascii_uncollapsed_name = wreath_ascii(m);
        f.ascii_name = m == 1 ? "C(S^1)" : f.ascii_uncollapsed_name;
        const std::string& a = f.ascii_name;
        names.push_back(several && m > 1 ? "(" + f.name + ")" : f.name);
        ascii.push_back(several && m > 1 ? "(" + a + ")" : a);
        d.factors.push_back(std::move(f));
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        d.canonical_name += (i ? " ⋆ " : "") + names[i];
        d.ascii_name += (i ? " * " : "") + ascii[i];
    }
    return d;
}

std::vector<SymmetryDescriptor> descriptors_for_n(int n, int cap) {
    std::vector<SymmetryDescriptor> out;
    for (const auto& p : enumerate_partitions(n, cap)) out.push_back(symmetry_descriptor(p));
    return out;
}

}  // namespace qsym
