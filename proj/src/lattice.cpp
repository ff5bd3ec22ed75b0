#include "chainavoid/lattice.hpp"

#include <algorithm>

namespace chainavoid::lattice {

bool chain_is_valid(const MaximalChain& c, int n) {
    Mask top = c.elems.empty() ? 0 : c.elems.back();
    if (rank(top) + 1 != static_cast<int>(c.elems.size())) return false;
    if (c.elems.front() != 0) return false;
    for (std::size_t i = 0; i + 1 < c.elems.size(); ++i) {
        Mask a = c.elems[i], b = c.elems[i + 1];
        if (!is_proper_subset(a, b) || rank(b) != rank(a) + 1) return false;
    }
    if (n >= 0 && (top >> n) != 0) return false;
    return true;
}

std::vector<Mask> layer(int n, int j) {
    if (n < 0 || n > kMaxGroundSet || j < 0 || j > n)
        throw precondition_error("layer: require 0 <= j <= n <= 24");
    std::vector<Mask> out;
    for (Mask x = 0; x < (Mask(1) << n); ++x)
        if (rank(x) == j) out.push_back(x);
    return out;
}

std::vector<Mask> canonical_elements(int n) {
    if (n < 0 || n > kMaxGroundSet)
        throw precondition_error("canonical_elements: require 0 <= n <= 24");
    std::vector<Mask> out;
    out.reserve(std::size_t(1) << n);
    for (Mask x = 0; x < (Mask(1) << n); ++x) out.push_back(x);
    std::sort(out.begin(), out.end(), canonical_less);
    return out;
}

std::uint64_t bounded_draw(Rng& rng, std::uint64_t k) {
    if (k == 0) throw precondition_error("bounded_draw: k must be positive");
    if (k == 1) return 0;
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % k);
    for (;;) {
        std::uint64_t v = rng();
        if (v < limit) return v % k;
    }
}

namespace {

// Fisher-Yates over an explicit bit order; a uniform permutation of the bits
// added bottom-to-top gives a uniform maximal chain.
MaximalChain chain_from_bits(std::vector<int> bits, Rng& rng) {
    for (std::size_t i = bits.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
        std::swap(bits[i - 1], bits[j]);
    }
    MaximalChain c;
    c.elems.reserve(bits.size() + 1);
    Mask cur = 0;
    c.elems.push_back(cur);
    for (int b : bits) {
        cur |= Mask(1) << b;
        c.elems.push_back(cur);
    }
    return c;
}

} // namespace

MaximalChain random_maximal_chain(int n, Rng& rng) {
    if (n < 0 || n > kMaxGroundSet)
        throw precondition_error("random_maximal_chain: require 0 <= n <= 24");
    std::vector<int> bits(n);
    for (int i = 0; i < n; ++i) bits[i] = i;
    return chain_from_bits(std::move(bits), rng);
}

MaximalChain random_maximal_chain_below(Mask x, Rng& rng) {
    std::vector<int> bits;
    for (int i = 0; i < 32; ++i)
        if (x & (Mask(1) << i)) bits.push_back(i);
    return chain_from_bits(std::move(bits), rng);
}

namespace {

void collect_chains(Mask x, std::vector<int>& order, std::vector<int>& remaining,
                    std::vector<MaximalChain>& out) {
    if (remaining.empty()) {
        MaximalChain c;
        Mask cur = 0;
        c.elems.push_back(cur);
        for (int b : order) {
            cur |= Mask(1) << b;
            c.elems.push_back(cur);
        }
        out.push_back(std::move(c));
        return;
    }
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        int b = remaining[i];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
        order.push_back(b);
        collect_chains(x, order, remaining, out);
        order.pop_back();
        remaining.insert(remaining.begin() + static_cast<std::ptrdiff_t>(i), b);
    }
}

} // namespace

std::vector<MaximalChain> all_chains_below(Mask x) {
    std::vector<int> bits;
    for (int i = 0; i < 32; ++i)
        if (x & (Mask(1) << i)) bits.push_back(i);
    std::vector<MaximalChain> out;
    std::vector<int> order;
    collect_chains(x, order, bits, out);
    return out;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

} // namespace chainavoid::lattice
