#include "shrub/canon.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace shrub {

namespace {

struct Refiner {
    const Structure& s;
    std::vector<Bits> twin;  // transposition (v w) is an automorphism

    void compute_twins() {
        twin.assign(s.n, Bits(s.n));
        for (int v = 0; v < s.n; ++v)
            for (int w = v + 1; w < s.n; ++w) {
                if (v == s.constant || w == s.constant) continue;
                bool ok = true;
                for (auto& c : s.colors) ok = ok && c.test(v) == c.test(w);
                for (auto& R : s.rel) {
                    if (!ok) break;
                    if (R[v].test(v) != R[w].test(w) || R[v].test(w) != R[w].test(v)) ok = false;
                    for (int x = 0; x < s.n && ok; ++x) {
                        if (x == v || x == w) continue;
                        if (R[v].test(x) != R[w].test(x) || R[x].test(v) != R[x].test(w)) ok = false;
                    }
                }
                if (ok) {
                    twin[v].set(w);
                    twin[w].set(v);
                }
            }
    }

    // Renumber so cells are ordered by key; returns number of cells.
    static int renumber(const std::vector<std::vector<int>>& keys, std::vector<int>& cell) {
        std::vector<int> idx(keys.size());
        for (size_t i = 0; i < idx.size(); ++i) idx[i] = (int)i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return keys[a] < keys[b]; });
        int c = -1;
        for (size_t i = 0; i < idx.size(); ++i) {
            if (i == 0 || keys[idx[i]] != keys[idx[i - 1]]) ++c;
            cell[idx[i]] = c;
        }
        return c + 1;
    }

    int initial(std::vector<int>& cell) const {
        std::vector<std::vector<int>> keys(s.n);
        for (int v = 0; v < s.n; ++v) {
            keys[v].push_back(v == s.constant ? 0 : 1);
            for (auto& c : s.colors) keys[v].push_back(c.test(v));
            for (auto& R : s.rel) keys[v].push_back(R[v].test(v));
        }
        cell.assign(s.n, 0);
        return renumber(keys, cell);
    }

    int refine(std::vector<int>& cell, int k) const {
        while (true) {
            std::vector<std::vector<int>> keys(s.n);
            for (int v = 0; v < s.n; ++v) {
                auto& key = keys[v];
                key.assign(1 + 2 * s.rel.size() * k, 0);
                key[0] = cell[v];
                for (size_t r = 0; r < s.rel.size(); ++r) {
                    int base = 1 + 2 * (int)r * k;
                    s.rel[r][v].for_each([&](int w) { key[base + cell[w]]++; });
                    for (int w = 0; w < s.n; ++w)
                        if (s.rel[r][w].test(v)) key[base + k + cell[w]]++;
                }
            }
            int k2 = renumber(keys, cell);
            if (k2 == k) return k;
            k = k2;
        }
    }

    std::string encode(const std::vector<int>& cell) const {
        // cell is a discrete labelling: vertex v goes to position cell[v]
        std::vector<int> at(s.n);
        for (int v = 0; v < s.n; ++v) at[cell[v]] = v;
        std::string out;
        auto put = [&](int x) {
            for (int b = 0; b < 4; ++b) out.push_back(char((x >> (8 * b)) & 0xff));
        };
        put(s.n);
        put(s.constant < 0 ? -1 : cell[s.constant]);
        put((int)s.colors.size());
        put((int)s.rel.size());
        std::vector<bool> bits;
        for (int i = 0; i < s.n; ++i)
            for (auto& c : s.colors) bits.push_back(c.test(at[i]));
        for (auto& R : s.rel)
            for (int i = 0; i < s.n; ++i)
                for (int j = 0; j < s.n; ++j) bits.push_back(R[at[i]].test(at[j]));
        for (size_t i = 0; i < bits.size(); i += 8) {
            unsigned char byte = 0;
            for (size_t b = 0; b < 8 && i + b < bits.size(); ++b)
                if (bits[i + b]) byte |= (unsigned char)(1u << b);
            out.push_back((char)byte);
        }
        return out;
    }

    void search(std::vector<int> cell, int k, std::optional<std::string>& best) const {
        k = refine(cell, k);
        if (k == s.n) {
            std::string e = encode(cell);
            if (!best || e < *best) best = std::move(e);
            return;
        }
        std::vector<int> size(k, 0);
        for (int c : cell) size[c]++;
        int target = -1;
        for (int c = 0; c < k; ++c)
            if (size[c] > 1 && (target < 0 || size[c] < size[target])) target = c;
        std::vector<int> tried;
        for (int v = 0; v < s.n; ++v) {
            if (cell[v] != target) continue;
            bool dup = false;
            for (int u : tried) dup = dup || twin[u].test(v);
            if (dup) continue;
            tried.push_back(v);
            std::vector<std::vector<int>> keys(s.n);
            for (int w = 0; w < s.n; ++w) keys[w] = {cell[w], (w != v && cell[w] == target) ? 1 : 0};
            std::vector<int> c2(s.n);
            int k2 = renumber(keys, c2);
            search(c2, k2, best);
        }
    }
};

}  // namespace

std::string canonical_form(const Structure& s, int cap) {
    Refiner rf{s};
    std::vector<int> cell;
    int k = rf.initial(cell);
    k = rf.refine(cell, k);
    if (s.n > cap && k < s.n) {
        std::vector<int> size(k, 0);
        for (int c : cell) size[c]++;
        int open = 0;
        for (int c = 0; c < k; ++c)
            if (size[c] > 1) open += size[c];
        if (open > cap)
            throw CanonOverflow("canonicalization overflow: " + std::to_string(s.n) + " elements, " +
                                std::to_string(open) + " unresolved after refinement (cap " + std::to_string(cap) + ")");
    }
    rf.compute_twins();
    std::optional<std::string> best;
    rf.search(cell, k, best);
    return *best;
}

std::string canonical_form(const Graph& g, int cap) { return canonical_form(to_structure(g), cap); }

bool isomorphic(const Graph& a, const Graph& b, int cap) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a, cap) == canonical_form(b, cap);
}

std::string to_hex(const std::string& bytes) {
    static const char* d = "0123456789abcdef";
    std::string out;
    for (unsigned char c : bytes) {
        out.push_back(d[c >> 4]);
        out.push_back(d[c & 15]);
    }
    return out;
}

}  // namespace shrub
