#include <algorithm>
#include <unordered_map>

#include "shrub/logic.hpp"

namespace shrub {

namespace {

struct CNode {
    Op op;
    int rel = -1, a = 0, b = 0;
    int x = -1, y = -1;  // element slots of atoms, endpoints of conn
    int set = -1;        // set slot of In/Card, bound slot of set quantifiers
    int var = -1;        // bound element slot
    int u = -1, v = -1;  // conn step variables
    std::vector<int> kids;

    std::vector<int> free_e;
    bool free_sets = false;

    bool memo = false;
    std::vector<int8_t> table;

    bool guarded = false;
    std::vector<int> guard_var, guard_body;
    std::vector<int> rest;  // remaining conjuncts (exists) or premise conjuncts (forall)
    int concl = -1;

    bool cache_reach = false;
    std::vector<int> reach_key;
    std::unordered_map<uint64_t, Bits> reach;
};

// Matches forall u (X(u) -> gamma), forall u (not X(u) or gamma) and
// forall u (P -> (X(u) -> R)) with gamma = P -> R.
bool is_guard(const Formula& g, const std::string& X, std::string& u, Formula& gamma) {
    if (g->op != Op::Forall) return false;
    const auto& b = g->kids[0];
    auto is_mem = [&](const Formula& f) { return f->op == Op::In && f->name == X && f->vars[0] == g->name; };
    Formula rest;
    if (b->op == Op::Implies && is_mem(b->kids[0])) {
        rest = b->kids[1];
    } else if (b->op == Op::Or && b->kids.size() == 2 && b->kids[0]->op == Op::Not && is_mem(b->kids[0]->kids[0])) {
        rest = b->kids[1];
    } else if (b->op == Op::Implies && b->kids[1]->op == Op::Implies && is_mem(b->kids[1]->kids[0]) &&
               !free_set_vars(b->kids[0]).count(X)) {
        rest = implies(b->kids[0], b->kids[1]->kids[1]);
    } else {
        return false;
    }
    if (free_set_vars(rest).count(X)) return false;
    u = g->name;
    gamma = rest;
    return true;
}

void flatten_and(const Formula& f, std::vector<Formula>& out) {
    if (f->op == Op::And) {
        for (auto& k : f->kids) flatten_and(k, out);
    } else if (f->op != Op::True) {
        out.push_back(f);
    }
}

std::vector<Formula> conjuncts(const Formula& f) {
    std::vector<Formula> out;
    flatten_and(f, out);
    return out;
}

}  // namespace

struct Evaluator::Impl {
    const Structure& s;
    EvalOptions opt;
    std::vector<CNode> nodes;
    std::map<std::string, int> eslot, sslot;
    std::vector<int> env;
    std::vector<Bits> sets;
    std::vector<int> elem_params, set_params;
    std::map<const Node*, int> seen;
    std::vector<Formula> keep;  // formulas built during compilation must outlive `seen`
    int root = -1;
    long long steps = 0;

    Impl(const Structure& st, EvalOptions o) : s(st), opt(o) {}

    int eslot_of(const std::string& name) {
        auto it = eslot.find(name);
        if (it != eslot.end()) return it->second;
        int k = (int)eslot.size();
        eslot[name] = k;
        return k;
    }
    int sslot_of(const std::string& name) {
        auto it = sslot.find(name);
        if (it != sslot.end()) return it->second;
        int k = (int)sslot.size();
        sslot[name] = k;
        return k;
    }

    int add(CNode c) {
        nodes.push_back(std::move(c));
        return (int)nodes.size() - 1;
    }

    int compile(const Formula& f) {
        auto it = seen.find(f.get());
        if (it != seen.end()) return it->second;
        int id = compile_raw(f);
        seen[f.get()] = id;
        return id;
    }

    int compile_raw(const Formula& f) {
        CNode c;
        c.op = f->op;
        switch (f->op) {
            case Op::True:
            case Op::False: break;
            case Op::Rel:
                c.rel = s.rel_index(f->name);
                if (c.rel < 0) throw FormulaError("signature mismatch: no relation " + f->name);
                c.x = eslot_of(f->vars[0]);
                c.y = eslot_of(f->vars[1]);
                break;
            case Op::Eq:
                c.x = eslot_of(f->vars[0]);
                c.y = eslot_of(f->vars[1]);
                break;
            case Op::Color:
                if (f->a < 1 || f->a > (int)s.colors.size())
                    throw FormulaError("signature mismatch: no color " + std::to_string(f->a));
                c.a = f->a;
                c.x = eslot_of(f->vars[0]);
                break;
            case Op::In:
                c.set = sslot_of(f->name);
                c.x = eslot_of(f->vars[0]);
                break;
            case Op::Card:
                c.set = sslot_of(f->name);
                c.a = f->a;
                c.b = f->b;
                break;
            case Op::Exists:
            case Op::Forall:
                c.var = eslot_of(f->name);
                c.kids.push_back(compile(f->kids[0]));
                break;
            case Op::ExistsSet:
            case Op::ForallSet:
                c.set = sslot_of(f->name);
                c.kids.push_back(compile(f->kids[0]));
                if (opt.guarded_sets) detect_guard(c, f);
                break;
            case Op::Conn:
                c.x = eslot_of(f->vars[0]);
                c.y = eslot_of(f->vars[1]);
                c.u = eslot_of(f->vars[2]);
                c.v = eslot_of(f->vars[3]);
                c.kids.push_back(compile(f->kids[0]));
                break;
            default:
                for (auto& k : f->kids) c.kids.push_back(compile(k));
        }
        for (auto& name : free_element_vars(f)) c.free_e.push_back(eslot_of(name));
        c.free_sets = !free_set_vars(f).empty();
        bool quant = f->op == Op::Exists || f->op == Op::Forall || f->op == Op::ExistsSet ||
                     f->op == Op::ForallSet || f->op == Op::Conn;
        if (opt.memo && quant && !c.free_sets && c.free_e.size() <= 3) {
            long long size = 1;
            for (size_t i = 0; i < c.free_e.size(); ++i) size *= std::max(1, s.n);
            if (size <= (1 << 22)) {
                c.memo = true;
                c.table.assign(size, -1);
            }
        }
        if (f->op == Op::Conn && !c.free_sets) {
            long long size = 1;
            for (int k : c.free_e)
                if (k != c.y) {
                    c.reach_key.push_back(k);
                    size *= std::max(1, s.n);
                    if (size > (1LL << 40)) break;
                }
            c.cache_reach = size <= (1LL << 40);
        }
        return add(std::move(c));
    }

    void detect_guard(CNode& c, const Formula& f) {
        const std::string& X = f->name;
        const Formula& body = f->kids[0];
        std::vector<Formula> cs;
        if (f->op == Op::ExistsSet) cs = conjuncts(body);
        else if (body->op == Op::Implies) cs = conjuncts(body->kids[0]);
        else return;
        std::vector<int> rest;
        for (auto& k : cs) {
            std::string u;
            Formula gamma;
            if (is_guard(k, X, u, gamma)) {
                keep.push_back(gamma);
                c.guard_var.push_back(eslot_of(u));
                c.guard_body.push_back(compile(gamma));
            } else {
                rest.push_back(compile(k));
            }
        }
        if (c.guard_var.empty()) return;
        c.guarded = true;
        c.rest = rest;
        if (f->op == Op::ForallSet) c.concl = compile(body->kids[1]);
    }

    void tick(long long k = 1) {
        steps += k;
        if (steps > opt.budget) throw ResourceGuard("evaluation step budget exceeded");
    }

    bool ev(int i) {
        tick();
        CNode& c = nodes[i];
        if (!c.memo) return ev_raw(c);
        size_t idx = 0;
        for (int k : c.free_e) idx = idx * s.n + env[k];
        int8_t& slot = c.table[idx];
        if (slot >= 0) return slot;
        bool r = ev_raw(c);
        nodes[i].table[idx] = r;
        return r;
    }

    bool all_of(const std::vector<int>& ks) {
        for (int k : ks)
            if (!ev(k)) return false;
        return true;
    }

    bool ev_set(CNode& c) {
        std::vector<int> cand;
        if (c.guarded) {
            for (int w = 0; w < s.n; ++w) {
                bool ok = true;
                for (size_t g = 0; g < c.guard_var.size() && ok; ++g) {
                    int saved = env[c.guard_var[g]];
                    env[c.guard_var[g]] = w;
                    ok = ev(c.guard_body[g]);
                    env[c.guard_var[g]] = saved;
                }
                if (ok) cand.push_back(w);
            }
        } else {
            for (int w = 0; w < s.n; ++w) cand.push_back(w);
        }
        int m = (int)cand.size();
        if (m > 40 || (1LL << m) > opt.budget - steps)
            throw ResourceGuard("set quantifier over " + std::to_string(m) + " candidate elements");
        bool ex = c.op == Op::ExistsSet;
        Bits saved = sets[c.set];
        Bits& X = sets[c.set];
        X = Bits(s.n);
        bool result = !ex;
        for (long long i = 0;; ++i) {
            if (i > 0) X.flip(cand[std::countr_zero((unsigned long long)i)]);
            bool val;
            if (c.guarded) {
                if (ex) val = all_of(c.rest);
                else val = !all_of(c.rest) || ev(c.concl);
            } else {
                val = ev(c.kids[0]);
            }
            if (ex && val) {
                result = true;
                break;
            }
            if (!ex && !val) {
                result = false;
                break;
            }
            if (i + 1 == (1LL << m)) break;
        }
        sets[c.set] = saved;
        return result;
    }

    Bits bfs(CNode& c) {
        Bits seen(s.n);
        int su = env[c.u], sv = env[c.v];
        std::vector<int> queue{env[c.x]};
        seen.set(env[c.x]);
        for (size_t h = 0; h < queue.size(); ++h) {
            env[c.u] = queue[h];
            for (int w = 0; w < s.n; ++w) {
                if (seen.test(w)) continue;
                env[c.v] = w;
                if (ev(c.kids[0])) {
                    seen.set(w);
                    queue.push_back(w);
                }
            }
        }
        env[c.u] = su;
        env[c.v] = sv;
        return seen;
    }

    bool ev_conn(CNode& c) {
        if (!c.cache_reach) return bfs(c).test(env[c.y]);
        uint64_t key = 0;
        for (int k : c.reach_key) key = key * (uint64_t)s.n + env[k];
        auto it = c.reach.find(key);
        if (it == c.reach.end()) {
            Bits r = bfs(c);
            it = c.reach.emplace(key, std::move(r)).first;
        }
        return it->second.test(env[c.y]);
    }

    bool ev_raw(CNode& c) {
        switch (c.op) {
            case Op::True: return true;
            case Op::False: return false;
            case Op::Rel: return s.rel[c.rel][env[c.x]].test(env[c.y]);
            case Op::Eq: return env[c.x] == env[c.y];
            case Op::Color: return s.colors[c.a - 1].test(env[c.x]);
            case Op::In: return sets[c.set].test(env[c.x]);
            case Op::Card: return sets[c.set].count() % c.b == c.a;
            case Op::Not: return !ev(c.kids[0]);
            case Op::And:
                for (int k : c.kids)
                    if (!ev(k)) return false;
                return true;
            case Op::Or:
                for (int k : c.kids)
                    if (ev(k)) return true;
                return false;
            case Op::Implies: return !ev(c.kids[0]) || ev(c.kids[1]);
            case Op::Iff: return ev(c.kids[0]) == ev(c.kids[1]);
            case Op::Xor: return ev(c.kids[0]) != ev(c.kids[1]);
            case Op::Exists:
            case Op::Forall: {
                bool ex = c.op == Op::Exists;
                int saved = env[c.var];
                bool result = !ex;
                for (int w = 0; w < s.n; ++w) {
                    env[c.var] = w;
                    if (ev(c.kids[0]) == ex) {
                        result = ex;
                        break;
                    }
                }
                env[c.var] = saved;
                return result;
            }
            case Op::ExistsSet:
            case Op::ForallSet: return ev_set(c);
            case Op::Conn: return ev_conn(c);
        }
        return false;
    }
};

Evaluator::Evaluator(const Structure& s, const Formula& f, std::vector<std::string> elem_params,
                     std::vector<std::string> set_params, EvalOptions opt)
    : impl_(std::make_unique<Impl>(s, opt)) {
    Formula g = opt.native_conn ? f : expand_conn(f);
    auto& I = *impl_;
    for (auto& p : elem_params) I.elem_params.push_back(I.eslot_of(p));
    for (auto& p : set_params) I.set_params.push_back(I.sslot_of(p));
    auto fe = free_element_vars(g);
    auto fs = free_set_vars(g);
    int const_slot = -1;
    for (auto& v : fe)
        if (std::find(elem_params.begin(), elem_params.end(), v) == elem_params.end()) {
            if (v == "c" && s.constant >= 0) const_slot = I.eslot_of(v);
            else throw FormulaError("unbound variable " + v);
        }
    for (auto& v : fs)
        if (std::find(set_params.begin(), set_params.end(), v) == set_params.end())
            throw FormulaError("unbound set variable " + v);
    I.root = I.compile(g);
    I.env.assign(I.eslot.size(), 0);
    I.sets.assign(I.sslot.size(), Bits(s.n));
    if (const_slot >= 0) I.env[const_slot] = s.constant;
}

Evaluator::~Evaluator() = default;

bool Evaluator::operator()(const std::vector<int>& elems, const std::vector<Bits>& sets) {
    auto& I = *impl_;
    if (elems.size() != I.elem_params.size() || sets.size() != I.set_params.size())
        throw FormulaError("wrong number of arguments");
    for (size_t i = 0; i < elems.size(); ++i) {
        if (elems[i] < 0 || elems[i] >= I.s.n) throw FormulaError("element out of range");
        I.env[I.elem_params[i]] = elems[i];
    }
    for (size_t i = 0; i < sets.size(); ++i) I.sets[I.set_params[i]] = sets[i];
    return I.ev(I.root);
}

long long Evaluator::steps() const { return impl_->steps; }

bool evaluate(const Structure& s, const Formula& f, const Assignment& a, EvalOptions opt) {
    std::vector<std::string> en, sn;
    std::vector<int> ev;
    std::vector<Bits> sv;
    for (auto& [k, v] : a.elem) {
        en.push_back(k);
        ev.push_back(v);
    }
    for (auto& [k, v] : a.sets) {
        sn.push_back(k);
        sv.push_back(v);
    }
    Evaluator e(s, f, en, sn, opt);
    return e(ev, sv);
}

bool evaluate(const Graph& g, const Formula& f, const Assignment& a, EvalOptions opt) {
    return evaluate(to_structure(g), f, a, opt);
}

}  // namespace shrub
