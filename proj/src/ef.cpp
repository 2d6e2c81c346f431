#include <algorithm>
#include <functional>
#include <unordered_map>
#include <unordered_set>

#include "shrub/logic.hpp"

namespace shrub {

namespace {

using Pairs = std::vector<std::pair<int, int>>;

struct EfGame {
    const Structure& a;
    const Structure& b;
    std::map<std::pair<Pairs, int>, bool> memo;

    // Atomic type of v relative to the already chosen elements (side 0 = a, 1 = b).
    std::vector<char> type(const Structure& s, int v, const Pairs& p, int side) const {
        std::vector<char> t;
        for (size_t r = 0; r < s.rel.size(); ++r) t.push_back(s.holds((int)r, v, v));
        for (auto& c : s.colors) t.push_back(c.test(v));
        for (auto& pr : p) {
            int w = side == 0 ? pr.first : pr.second;
            t.push_back(v == w);
            for (size_t r = 0; r < s.rel.size(); ++r) {
                t.push_back(s.holds((int)r, v, w));
                t.push_back(s.holds((int)r, w, v));
            }
        }
        return t;
    }

    bool partial_iso(const Pairs& p) const {
        for (size_t i = 0; i < p.size(); ++i) {
            auto ta = type(a, p[i].first, Pairs(p.begin(), p.begin() + i), 0);
            auto tb = type(b, p[i].second, Pairs(p.begin(), p.begin() + i), 1);
            if (ta != tb) return false;
        }
        return true;
    }

    bool win(Pairs p, int r) {
        if (r == 0) return true;
        std::sort(p.begin(), p.end());
        p.erase(std::unique(p.begin(), p.end()), p.end());
        auto key = std::make_pair(p, r);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        bool res;
        if (r == 1) {
            std::set<std::vector<char>> ta, tb;
            for (int v = 0; v < a.n; ++v) ta.insert(type(a, v, p, 0));
            for (int v = 0; v < b.n; ++v) tb.insert(type(b, v, p, 1));
            res = ta == tb;
        } else {
            res = side_ok(p, r, 0) && side_ok(p, r, 1);
        }
        memo[key] = res;
        return res;
    }

    bool side_ok(const Pairs& p, int r, int side) {
        const Structure& s = side == 0 ? a : b;
        const Structure& o = side == 0 ? b : a;
        std::vector<std::vector<char>> otypes(o.n);
        for (int w = 0; w < o.n; ++w) otypes[w] = type(o, w, p, 1 - side);
        for (int v = 0; v < s.n; ++v) {
            auto tv = type(s, v, p, side);
            bool ok = false;
            for (int w = 0; w < o.n && !ok; ++w) {
                if (otypes[w] != tv) continue;
                Pairs q = p;
                q.push_back(side == 0 ? std::make_pair(v, w) : std::make_pair(w, v));
                ok = win(q, r - 1);
            }
            if (!ok) return false;
        }
        return true;
    }
};

}  // namespace

bool fo_q_equivalent(const Structure& s1, const Structure& s2, int q, int cap) {
    if (s1.n > cap || s2.n > cap) throw ResourceGuard("EF game limited to " + std::to_string(cap) + " elements");
    if (!(s1.sig == s2.sig)) throw FormulaError("signature mismatch");
    if (q < 0) throw FormulaError("negative rank");
    EfGame g{s1, s2, {}};
    Pairs init;
    if (s1.constant >= 0 && s2.constant >= 0) init.push_back({s1.constant, s2.constant});
    if (!g.partial_iso(init)) return q == 0 ? true : false;
    if (q == 0) return true;
    if ((s1.n == 0) != (s2.n == 0)) return false;
    return g.win(init, q);
}

std::optional<std::vector<int>> order_property_witness(const Structure& s, const Formula& phi, int l,
                                                       const std::string& x, const std::string& y, int cap) {
    if (s.n > cap) throw ResourceGuard("order search limited to " + std::to_string(cap) + " elements");
    Evaluator ev(s, phi, {x, y});
    std::vector<std::vector<char>> m(s.n, std::vector<char>(s.n));
    for (int u = 0; u < s.n; ++u)
        for (int v = 0; v < s.n; ++v) m[u][v] = ev({u, v});
    std::vector<int> seq;
    std::function<bool()> rec = [&]() {
        if ((int)seq.size() == l) return true;
        for (int v = 0; v < s.n; ++v) {
            if (!m[v][v]) continue;
            bool ok = true;
            for (int a : seq)
                if (!m[a][v] || m[v][a]) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            seq.push_back(v);
            if (rec()) return true;
            seq.pop_back();
        }
        return false;
    };
    if (rec()) return seq;
    return std::nullopt;
}

// ---------------------------------------------------------------- distinguishing sentences

namespace {

struct Item {
    Formula f;
    std::vector<char> table;  // tuples of s1 followed by tuples of s2
};

struct TableHash {
    size_t operator()(const std::vector<char>& v) const {
        size_t h = v.size();
        for (char c : v) h = h * 1315423911u + (unsigned char)c;
        return h;
    }
};

constexpr size_t kLevelCap = 20000;

}  // namespace

std::optional<Formula> find_distinguishing_sentence(const Structure& s1, const Structure& s2, int q) {
    if (!(s1.sig == s2.sig)) throw FormulaError("signature mismatch");
    auto pw = [](long long b, int e) {
        long long r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    if (pw(s1.n, q) + pw(s2.n, q) > 2000000) throw ResourceGuard("distinguishing search too large");
    std::vector<std::string> names;
    for (int i = 1; i <= q; ++i) names.push_back("x" + std::to_string(i));
    const Structure* S[2] = {&s1, &s2};

    auto tuple = [&](const Structure& s, long long idx, int m) {
        std::vector<int> t(m);
        for (int i = m - 1; i >= 0; --i) {
            t[i] = (int)(idx % s.n);
            idx /= s.n;
        }
        return t;
    };

    // Literals over x1..xm.
    auto literals = [&](int m) {
        std::vector<Item> out;
        auto add = [&](Formula f, const std::function<bool(const Structure&, const std::vector<int>&)>& val) {
            Item it{f, {}}, nt{neg(f), {}};
            for (auto* s : S) {
                long long cnt = pw(s->n, m);
                for (long long i = 0; i < cnt; ++i) {
                    bool b = val(*s, tuple(*s, i, m));
                    it.table.push_back(b);
                    nt.table.push_back(!b);
                }
            }
            out.push_back(it);
            out.push_back(nt);
        };
        for (int i = 0; i < m; ++i) {
            for (int c = 1; c <= s1.sig.colors; ++c)
                add(color(c, names[i]), [=](const Structure& s, const std::vector<int>& t) {
                    return s.colors[c - 1].test(t[i]);
                });
            for (int j = 0; j < m; ++j) {
                if (i < j)
                    add(eq(names[i], names[j]), [=](const Structure&, const std::vector<int>& t) { return t[i] == t[j]; });
                for (size_t r = 0; r < s1.sig.binary.size(); ++r)
                    add(rel(s1.sig.binary[r], names[i], names[j]),
                        [=](const Structure& s, const std::vector<int>& t) { return s.holds((int)r, t[i], t[j]); });
            }
        }
        return out;
    };

    auto close = [&](std::vector<Item> basis) {
        std::vector<Item> out;
        std::unordered_set<std::vector<char>, TableHash> seen;
        auto push = [&](Item it) {
            if (out.size() >= kLevelCap) return;
            if (seen.insert(it.table).second) out.push_back(std::move(it));
        };
        for (auto& b : basis) push(b);
        size_t nb = out.size();
        for (size_t i = 0; i < nb; ++i)
            for (size_t j = i + 1; j < nb; ++j) {
                Item a{conj({out[i].f, out[j].f}), out[i].table}, o{disj({out[i].f, out[j].f}), out[i].table};
                for (size_t k = 0; k < a.table.size(); ++k) {
                    a.table[k] = out[i].table[k] & out[j].table[k];
                    o.table[k] = out[i].table[k] | out[j].table[k];
                }
                push(std::move(a));
                push(std::move(o));
            }
        return out;
    };

    std::vector<Item> level;
    if (q > 0) level = close(literals(q));
    for (int m = q; m >= 1; --m) {
        // Quantify away x_m.
        std::vector<Item> basis = literals(m - 1);
        for (auto& it : level) {
            Item e{exists(names[m - 1], it.f), {}}, a{forall(names[m - 1], it.f), {}};
            size_t off = 0;
            for (auto* s : S) {
                long long cnt = pw(s->n, m - 1);
                for (long long i = 0; i < cnt; ++i) {
                    bool any = false, all = true;
                    for (int w = 0; w < s->n; ++w) {
                        bool b = it.table[off + i * s->n + w];
                        any |= b;
                        all &= b;
                    }
                    e.table.push_back(any);
                    a.table.push_back(all);
                }
                off += pw(s->n, m);
            }
            basis.push_back(std::move(e));
            basis.push_back(std::move(a));
        }
        if (m - 1 == 0) {
            for (auto& it : basis)
                if (it.table[0] != it.table[1]) return it.f;
            return std::nullopt;
        }
        level = close(std::move(basis));
    }
    return std::nullopt;
}

}  // namespace shrub
