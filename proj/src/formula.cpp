#include <algorithm>
#include <atomic>
#include <cctype>
#include <functional>

#include "shrub/logic.hpp"

namespace shrub {

std::string logic_name(Logic l) {
    switch (l) {
        case Logic::FO: return "FO";
        case Logic::MSO: return "MSO";
        case Logic::CMSO: return "CMSO";
    }
    return "?";
}

static Formula mk(Op op, std::string name = {}, std::vector<std::string> vars = {}, int a = 0, int b = 0,
                  std::vector<Formula> kids = {}) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->name = std::move(name);
    n->vars = std::move(vars);
    n->a = a;
    n->b = b;
    n->kids = std::move(kids);
    return n;
}

Formula f_true() {
    static Formula t = mk(Op::True);
    return t;
}
Formula f_false() {
    static Formula f = mk(Op::False);
    return f;
}
Formula rel(const std::string& r, const std::string& x, const std::string& y) { return mk(Op::Rel, r, {x, y}); }
Formula edge(const std::string& x, const std::string& y) { return rel("E", x, y); }
Formula eq(const std::string& x, const std::string& y) { return mk(Op::Eq, {}, {x, y}); }
Formula color(int k, const std::string& x) { return mk(Op::Color, {}, {x}, k); }
Formula in(const std::string& set, const std::string& x) { return mk(Op::In, set, {x}); }
Formula card(int r, int k, const std::string& set) {
    if (k < 1 || r < 0 || r >= k) throw FormulaError("card needs 0 <= r < k");
    return mk(Op::Card, set, {}, r, k);
}
Formula neg(Formula f) { return mk(Op::Not, {}, {}, 0, 0, {std::move(f)}); }
Formula conj(std::vector<Formula> fs) {
    if (fs.empty()) return f_true();
    if (fs.size() == 1) return fs[0];
    return mk(Op::And, {}, {}, 0, 0, std::move(fs));
}
Formula disj(std::vector<Formula> fs) {
    if (fs.empty()) return f_false();
    if (fs.size() == 1) return fs[0];
    return mk(Op::Or, {}, {}, 0, 0, std::move(fs));
}
Formula implies(Formula a, Formula b) { return mk(Op::Implies, {}, {}, 0, 0, {std::move(a), std::move(b)}); }
Formula iff(Formula a, Formula b) { return mk(Op::Iff, {}, {}, 0, 0, {std::move(a), std::move(b)}); }
Formula fxor(Formula a, Formula b) { return mk(Op::Xor, {}, {}, 0, 0, {std::move(a), std::move(b)}); }
Formula exists(const std::string& v, Formula f) { return mk(Op::Exists, v, {}, 0, 0, {std::move(f)}); }
Formula forall(const std::string& v, Formula f) { return mk(Op::Forall, v, {}, 0, 0, {std::move(f)}); }
Formula exists_set(const std::string& v, Formula f) { return mk(Op::ExistsSet, v, {}, 0, 0, {std::move(f)}); }
Formula forall_set(const std::string& v, Formula f) { return mk(Op::ForallSet, v, {}, 0, 0, {std::move(f)}); }
Formula conn(const std::string& x, const std::string& y, const std::string& u, const std::string& v, Formula body) {
    return mk(Op::Conn, {}, {x, y, u, v}, 0, 0, {std::move(body)});
}

// ---------------------------------------------------------------- parsing

namespace {

struct Tok {
    std::string s;
    size_t pos;
};

std::vector<Tok> tokenize(const std::string& text) {
    std::vector<Tok> out;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace((unsigned char)c)) {
            ++i;
        } else if (c == ';') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '(' || c == ')') {
            out.push_back({std::string(1, c), i});
            ++i;
        } else {
            size_t j = i;
            while (j < text.size() && !std::isspace((unsigned char)text[j]) && text[j] != '(' && text[j] != ')' &&
                   text[j] != ';')
                ++j;
            out.push_back({text.substr(i, j - i), i});
            i = j;
        }
    }
    return out;
}

struct Parser {
    std::vector<Tok> toks;
    size_t k = 0;
    const Signature* sig;
    size_t end_pos;

    [[noreturn]] void fail(const std::string& msg, size_t pos) {
        throw FormulaError("syntax error at position " + std::to_string(pos) + ": " + msg);
    }
    const Tok& peek() {
        if (k >= toks.size()) fail("unexpected end of input", end_pos);
        return toks[k];
    }
    Tok next() {
        auto t = peek();
        ++k;
        return t;
    }
    void expect(const std::string& s) {
        auto t = next();
        if (t.s != s) fail("expected '" + s + "', got '" + t.s + "'", t.pos);
    }
    std::string atom() {
        auto t = next();
        if (t.s == "(" || t.s == ")") fail("expected a name, got '" + t.s + "'", t.pos);
        return t.s;
    }
    int number() {
        auto t = next();
        try {
            size_t used = 0;
            int v = std::stoi(t.s, &used);
            if (used != t.s.size()) throw std::invalid_argument("x");
            return v;
        } catch (const std::exception&) {
            fail("expected an integer, got '" + t.s + "'", t.pos);
        }
    }

    Formula expr() {
        auto t = next();
        if (t.s == "true") return f_true();
        if (t.s == "false") return f_false();
        if (t.s != "(") fail("expected '(', got '" + t.s + "'", t.pos);
        auto h = next();
        const std::string& head = h.s;
        Formula out;
        if (head == "true" || head == "false") {
            out = head == "true" ? f_true() : f_false();
        } else if (head == "and" || head == "or") {
            std::vector<Formula> kids;
            while (peek().s != ")") kids.push_back(expr());
            out = mk(head == "and" ? Op::And : Op::Or, {}, {}, 0, 0, kids);
            if (kids.empty()) out = head == "and" ? f_true() : f_false();
        } else if (head == "not") {
            out = neg(expr());
        } else if (head == "implies" || head == "iff" || head == "xor") {
            auto a = expr();
            auto b = expr();
            out = head == "implies" ? implies(a, b) : head == "iff" ? iff(a, b) : fxor(a, b);
        } else if (head == "exists" || head == "forall" || head == "existsSet" || head == "forallSet") {
            auto v = atom();
            auto body = expr();
            Op op = head == "exists" ? Op::Exists : head == "forall" ? Op::Forall
                  : head == "existsSet" ? Op::ExistsSet : Op::ForallSet;
            out = mk(op, v, {}, 0, 0, {body});
        } else if (head == "=") {
            auto x = atom();
            auto y = atom();
            out = eq(x, y);
        } else if (head == "color") {
            int c = number();
            if (c < 1) fail("color index must be >= 1", h.pos);
            if (sig && c > sig->colors) fail("color " + std::to_string(c) + " not in signature", h.pos);
            out = color(c, atom());
        } else if (head == "in") {
            auto X = atom();
            out = in(X, atom());
        } else if (head == "card") {
            int r = number();
            int m = number();
            if (m < 1 || r < 0 || r >= m) fail("card needs 0 <= r < k", h.pos);
            out = card(r, m, atom());
        } else if (head == "conn") {
            auto x = atom();
            auto y = atom();
            auto u = atom();
            auto v = atom();
            out = conn(x, y, u, v, expr());
        } else if (head == "(" || head == ")") {
            fail("expected an operator", h.pos);
        } else {
            std::vector<std::string> args;
            while (peek().s != ")") args.push_back(atom());
            if (args.size() != 2)
                fail("relation " + head + " has arity 2, got " + std::to_string(args.size()) + " arguments", h.pos);
            if (sig && std::find(sig->binary.begin(), sig->binary.end(), head) == sig->binary.end())
                fail("relation " + head + " not in signature", h.pos);
            out = rel(head, args[0], args[1]);
        }
        expect(")");
        return out;
    }
};

}  // namespace

Formula parse_formula(const std::string& text, const Signature* sig) {
    Parser p{tokenize(text), 0, sig, text.size()};
    auto f = p.expr();
    if (p.k != p.toks.size()) p.fail("trailing input", p.toks[p.k].pos);
    return f;
}

std::string to_string(const Formula& f) {
    auto kids = [&](const char* head) {
        std::string s = std::string("(") + head;
        for (auto& k : f->kids) s += " " + to_string(k);
        return s + ")";
    };
    switch (f->op) {
        case Op::True: return "true";
        case Op::False: return "false";
        case Op::Rel: return "(" + f->name + " " + f->vars[0] + " " + f->vars[1] + ")";
        case Op::Eq: return "(= " + f->vars[0] + " " + f->vars[1] + ")";
        case Op::Color: return "(color " + std::to_string(f->a) + " " + f->vars[0] + ")";
        case Op::In: return "(in " + f->name + " " + f->vars[0] + ")";
        case Op::Card: return "(card " + std::to_string(f->a) + " " + std::to_string(f->b) + " " + f->name + ")";
        case Op::Not: return kids("not");
        case Op::And: return kids("and");
        case Op::Or: return kids("or");
        case Op::Implies: return kids("implies");
        case Op::Iff: return kids("iff");
        case Op::Xor: return kids("xor");
        case Op::Exists: return "(exists " + f->name + " " + to_string(f->kids[0]) + ")";
        case Op::Forall: return "(forall " + f->name + " " + to_string(f->kids[0]) + ")";
        case Op::ExistsSet: return "(existsSet " + f->name + " " + to_string(f->kids[0]) + ")";
        case Op::ForallSet: return "(forallSet " + f->name + " " + to_string(f->kids[0]) + ")";
        case Op::Conn:
            return "(conn " + f->vars[0] + " " + f->vars[1] + " " + f->vars[2] + " " + f->vars[3] + " " +
                   to_string(f->kids[0]) + ")";
    }
    return "?";
}

int quantifier_rank(const Formula& f) {
    int r = 0;
    for (auto& k : f->kids) r = std::max(r, quantifier_rank(k));
    switch (f->op) {
        case Op::Exists:
        case Op::Forall:
        case Op::ExistsSet:
        case Op::ForallSet: return r + 1;
        case Op::Conn: return r + 3;
        default: return r;
    }
}

Logic logic_of(const Formula& f) {
    Logic l = Logic::FO;
    for (auto& k : f->kids) l = std::max(l, logic_of(k));
    switch (f->op) {
        case Op::Card: return Logic::CMSO;
        case Op::In:
        case Op::ExistsSet:
        case Op::ForallSet:
        case Op::Conn: return std::max(l, Logic::MSO);
        default: return l;
    }
}

static void collect_free(const Formula& f, std::set<std::string>& bound_e, std::set<std::string>& bound_s,
                         std::set<std::string>& out_e, std::set<std::string>& out_s) {
    auto use_e = [&](const std::string& v) {
        if (!bound_e.count(v)) out_e.insert(v);
    };
    switch (f->op) {
        case Op::Rel:
        case Op::Eq:
            use_e(f->vars[0]);
            use_e(f->vars[1]);
            return;
        case Op::Color: use_e(f->vars[0]); return;
        case Op::In:
            use_e(f->vars[0]);
            if (!bound_s.count(f->name)) out_s.insert(f->name);
            return;
        case Op::Card:
            if (!bound_s.count(f->name)) out_s.insert(f->name);
            return;
        case Op::Exists:
        case Op::Forall: {
            bool had = bound_e.count(f->name);
            bound_e.insert(f->name);
            collect_free(f->kids[0], bound_e, bound_s, out_e, out_s);
            if (!had) bound_e.erase(f->name);
            return;
        }
        case Op::ExistsSet:
        case Op::ForallSet: {
            bool had = bound_s.count(f->name);
            bound_s.insert(f->name);
            collect_free(f->kids[0], bound_e, bound_s, out_e, out_s);
            if (!had) bound_s.erase(f->name);
            return;
        }
        case Op::Conn: {
            use_e(f->vars[0]);
            use_e(f->vars[1]);
            bool hu = bound_e.count(f->vars[2]), hv = bound_e.count(f->vars[3]);
            bound_e.insert(f->vars[2]);
            bound_e.insert(f->vars[3]);
            collect_free(f->kids[0], bound_e, bound_s, out_e, out_s);
            if (!hu) bound_e.erase(f->vars[2]);
            if (!hv) bound_e.erase(f->vars[3]);
            return;
        }
        default:
            for (auto& k : f->kids) collect_free(k, bound_e, bound_s, out_e, out_s);
    }
}

std::set<std::string> free_element_vars(const Formula& f) {
    std::set<std::string> be, bs, e, s;
    collect_free(f, be, bs, e, s);
    return e;
}

std::set<std::string> free_set_vars(const Formula& f) {
    std::set<std::string> be, bs, e, s;
    collect_free(f, be, bs, e, s);
    return s;
}

std::string fresh_name(const std::string& base) {
    static std::atomic<long> counter{0};
    std::string b = base;
    auto p = b.find('_');
    if (p != std::string::npos) b = b.substr(0, p);
    return b + "_" + std::to_string(++counter);
}

static Formula subst(const Formula& f, const std::map<std::string, std::string>& m) {
    auto r = [&](const std::string& v) {
        auto it = m.find(v);
        return it == m.end() ? v : it->second;
    };
    auto bind = [&](const std::string& v, const Formula& body) {
        auto m2 = m;
        std::string nv = fresh_name(v);
        m2[v] = nv;
        return std::make_pair(nv, subst(body, m2));
    };
    switch (f->op) {
        case Op::True:
        case Op::False: return f;
        case Op::Rel: return rel(f->name, r(f->vars[0]), r(f->vars[1]));
        case Op::Eq: return eq(r(f->vars[0]), r(f->vars[1]));
        case Op::Color: return color(f->a, r(f->vars[0]));
        case Op::In: return in(r(f->name), r(f->vars[0]));
        case Op::Card: return card(f->a, f->b, r(f->name));
        case Op::Exists:
        case Op::Forall:
        case Op::ExistsSet:
        case Op::ForallSet: {
            auto [nv, body] = bind(f->name, f->kids[0]);
            return mk(f->op, nv, {}, 0, 0, {body});
        }
        case Op::Conn: {
            auto m2 = m;
            std::string nu = fresh_name(f->vars[2]), nv = fresh_name(f->vars[3]);
            m2[f->vars[2]] = nu;
            m2[f->vars[3]] = nv;
            return conn(r(f->vars[0]), r(f->vars[1]), nu, nv, subst(f->kids[0], m2));
        }
        default: {
            std::vector<Formula> kids;
            for (auto& k : f->kids) kids.push_back(subst(k, m));
            return mk(f->op, {}, {}, 0, 0, kids);
        }
    }
}

Formula substitute(const Formula& f, const std::map<std::string, std::string>& m) { return subst(f, m); }

Formula expand_conn(const Formula& f) {
    if (f->op == Op::Conn) {
        std::string Y = fresh_name("Y"), u = fresh_name("u"), v = fresh_name("v");
        auto body = substitute(expand_conn(f->kids[0]), {{f->vars[2], u}, {f->vars[3], v}});
        auto closed = forall(u, forall(v, implies(conj({in(Y, u), body}), in(Y, v))));
        return forall_set(Y, implies(conj({in(Y, f->vars[0]), closed}), in(Y, f->vars[1])));
    }
    if (f->kids.empty()) return f;
    std::vector<Formula> kids;
    for (auto& k : f->kids) kids.push_back(expand_conn(k));
    return mk(f->op, f->name, f->vars, f->a, f->b, kids);
}

// ---------------------------------------------------------------- named formulas

Formula twins_formula(const std::string& x, const std::string& y) {
    std::string z = fresh_name("z");
    return forall(z, implies(conj({neg(eq(z, x)), neg(eq(z, y))}), iff(edge(z, x), edge(z, y))));
}

static std::string deg1(const std::string& u) {
    return "(exists w (and (E " + u + " w) (forall w2 (implies (E " + u + " w2) (= w2 w)))))";
}

Formula phi_even() {
    static Formula f = parse_formula(
        "(existsSet X (and"
        "  (forall u (forall v (implies (E u v) (not (iff (in X u) (in X v))))))"
        "  (exists u (exists v (and (not (= u v)) " + deg1("u") + " " + deg1("v") +
        "    (in X u) (not (in X v)))))))");
    return f;
}

Formula phi_even_at(const std::string& x) {
    auto text =
        "(existsSet X (and"
        "  (forall u (implies (in X u) (conn x u a b (E a b))))"
        "  (forall u (forall v (implies (and (conn x u a b (E a b)) (E u v)) (not (iff (in X u) (in X v))))))"
        "  (exists u (exists v (and (conn x u a b (E a b)) (conn x v a b (E a b)) (not (= u v)) " +
        deg1("u") + " " + deg1("v") + " (in X u) (not (in X v)))))))";
    auto f = parse_formula(text);
    return x == "x" ? f : substitute(f, {{"x", x}});
}

Formula phi_same_parity() {
    static Formula f = [] {
        auto e = phi_even_at("x");
        return disj({forall("x", e), forall("x", neg(e))});
    }();
    return f;
}

// ---------------------------------------------------------------- random formulas

namespace {

struct Gen {
    std::mt19937_64& rng;
    const RandomFormulaOptions& opt;
    int counter = 0;

    int pick(int n) { return (int)(rng() % (uint64_t)n); }
    bool coin(double p) { return std::uniform_real_distribution<double>(0, 1)(rng) < p; }

    Formula atom(const std::vector<std::string>& ev, const std::vector<std::string>& sv) {
        std::vector<int> kinds;
        if (!ev.empty()) {
            kinds.push_back(0);
            kinds.push_back(0);
            kinds.push_back(1);
            if (opt.colors > 0) kinds.push_back(2);
            if (!sv.empty()) kinds.push_back(3);
        }
        if (!sv.empty() && opt.logic == Logic::CMSO) kinds.push_back(4);
        if (kinds.empty() || coin(0.05)) return coin(0.5) ? f_true() : f_false();
        switch (kinds[pick((int)kinds.size())]) {
            case 0: return rel(opt.relations[pick((int)opt.relations.size())], ev[pick((int)ev.size())],
                               ev[pick((int)ev.size())]);
            case 1: return eq(ev[pick((int)ev.size())], ev[pick((int)ev.size())]);
            case 2: return color(1 + pick(opt.colors), ev[pick((int)ev.size())]);
            case 3: return in(sv[pick((int)sv.size())], ev[pick((int)ev.size())]);
            default: {
                int k = 2 + pick(2);
                return card(pick(k), k, sv[pick((int)sv.size())]);
            }
        }
    }

    Formula gen(int depth, std::vector<std::string> ev, std::vector<std::string> sv, int quants) {
        if (depth == 0 || (coin(0.2) && !ev.empty())) return atom(ev, sv);
        int choice = pick(10);
        bool can_q = quants > 0;
        if (ev.empty() && can_q) choice = 6;
        if (choice <= 1) return neg(gen(depth - 1, ev, sv, quants));
        if (choice <= 5 || !can_q) {
            auto a = gen(depth - 1, ev, sv, quants);
            auto b = gen(depth - 1, ev, sv, quants);
            switch (pick(5)) {
                case 0: return conj({a, b});
                case 1: return disj({a, b});
                case 2: return implies(a, b);
                case 3: return iff(a, b);
                default: return fxor(a, b);
            }
        }
        bool set_q = opt.logic != Logic::FO && coin(0.35);
        if (set_q) {
            std::string X = "X" + std::to_string(counter++);
            sv.push_back(X);
            auto body = gen(depth - 1, ev, sv, quants - 1);
            return coin(0.5) ? exists_set(X, body) : forall_set(X, body);
        }
        std::string v = "v" + std::to_string(counter++);
        ev.push_back(v);
        auto body = gen(depth - 1, ev, sv, quants - 1);
        return coin(0.5) ? exists(v, body) : forall(v, body);
    }
};

}  // namespace

Formula random_formula(std::mt19937_64& rng, const std::vector<std::string>& free_vars,
                       const RandomFormulaOptions& opt) {
    Gen g{rng, opt};
    return g.gen(opt.depth, free_vars, {}, opt.max_quantifiers);
}

}  // namespace shrub
