#include "vpower/ilp.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace vpower {

Norm parse_norm(const std::string& text) {
    std::string t;
    for (char c : text) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (t == "l1") return Norm::L1;
    if (t == "linf" || t == "l_inf" || t == "max") return Norm::Linf;
    throw std::invalid_argument("unknown norm: " + text);
}

std::string to_string(Norm norm) { return norm == Norm::L1 ? "L1" : "Linf"; }

InverseInstance parse_instance_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    InverseInstance inst;
    for (const auto& v : j.at("sigma"))
        inst.sigma.push_back(v.is_string() ? parse_rational(v.get<std::string>())
                                           : parse_rational(v.dump()));
    if (inst.sigma.empty()) throw std::invalid_argument("sigma must be nonempty");
    if (sum(inst.sigma) != 1) throw std::invalid_argument("sigma must sum to 1");
    for (const auto& s : inst.sigma)
        if (s < 0) throw std::invalid_argument("sigma entries must be nonnegative");
    inst.index = parse_index(j.value("index", std::string("bz")));
    if (j.value("normalized", false)) inst.index.normalized = true;
    inst.cls = parse_game_class(j.value("class", std::string("simple")));
    inst.proper = j.value("proper", false);
    inst.strong = j.value("strong", false);
    inst.norm = parse_norm(j.value("norm", std::string("L1")));
    return inst;
}

}  // namespace vpower

namespace vpower::ilp {

using lp::Sense;
using lp::Term;

int Model::add_var(const std::string& name, VarKind kind, Q lower, std::optional<Q> upper) {
    if (by_name_.count(name)) throw std::logic_error("duplicate variable " + name);
    int id = static_cast<int>(vars.size());
    vars.push_back({name, kind, lower, upper});
    by_name_[name] = id;
    return id;
}

int Model::find(const std::string& name) const {
    auto it = by_name_.find(name);
    return it == by_name_.end() ? -1 : it->second;
}

int Model::var(const std::string& name) const {
    int id = find(name);
    if (id < 0) throw std::logic_error("undeclared variable " + name);
    return id;
}

void Model::add_row(const std::string& name, std::vector<Term> terms, Sense sense, Q rhs) {
    std::vector<Term> merged;
    for (auto& t : terms) {
        if (t.var < 0 || t.var >= static_cast<int>(vars.size())) throw std::logic_error("row " + name + " uses an undeclared variable");
        auto it = std::find_if(merged.begin(), merged.end(), [&](const Term& m) { return m.var == t.var; });
        if (it == merged.end()) merged.push_back(t);
        else it->coef += t.coef;
    }
    std::erase_if(merged, [](const Term& t) { return t.coef == 0; });
    rows.push_back({name, std::move(merged), sense, std::move(rhs)});
}

Z big_m_value(int n) {
    // (4n)^2 ((n+1)/4)^(n+1), then the smallest integer whose square reaches it.
    Q square = Q(16 * n * n) * power(frac(Z(n + 1), Z(4)), static_cast<unsigned>(n + 1));
    Z floor_val = square.get_num() / square.get_den();
    Z root;
    mpz_sqrt(root.get_mpz_t(), floor_val.get_mpz_t());
    while (Q(root * root) < square) ++root;
    return root;
}

bool has_ilp_block(const IndexId&) { return true; }

std::string x_name(Coalition s) { return "x_" + std::to_string(s); }

namespace {

std::string nm(const std::string& prefix, std::initializer_list<long> parts) {
    std::string out = prefix;
    for (long p : parts) out += "_" + std::to_string(p);
    return out;
}

void add_x_vars(Model& m, int n) {
    for (Coalition s = 0; s <= full_coalition(n); ++s) m.add_var(x_name(s), VarKind::Binary, 0, Q(1));
}

void add_class_rows(Model& m, GameClass cls, int n, bool proper, bool strong) {
    const Coalition full = full_coalition(n);
    auto x = [&](Coalition s) { return m.var(x_name(s)); };
    m.add_row("fix_empty", {{x(0), 1}}, Sense::Eq, 0);
    m.add_row("fix_full", {{x(full), 1}}, Sense::Eq, 1);
    if (cls == GameClass::Simple) {
        for (Coalition s = 1; s <= full; ++s)
            for (int i : members(s))
                m.add_row(nm("mono", {i, static_cast<long>(s)}), {{x(s & ~bit(i)), 1}, {x(s), -1}}, Sense::Le, 0);
    }
    if (cls == GameClass::Complete || cls == GameClass::Weighted) {
        for (Coalition s = 1; s <= full; ++s)
            for (Coalition t : direct_right_shifts(s, n))
                m.add_row(nm("shift", {static_cast<long>(s), static_cast<long>(t)}), {{x(t), 1}, {x(s), -1}}, Sense::Le, 0);
    }
    if (cls == GameClass::Weighted) {
        Q big = Q(big_m_value(n));
        m.big_m = big;
        int q = m.add_var("q", VarKind::Continuous, 0);
        std::vector<int> w;
        for (int i = 1; i <= n; ++i) w.push_back(m.add_var(nm("w", {i}), VarKind::Continuous, 0));
        m.add_row("quota_lo", {{q, 1}}, Sense::Ge, 1);
        m.add_row("quota_hi", {{q, 1}}, Sense::Le, big);
        for (int i = 1; i < n; ++i)
            m.add_row(nm("order", {i}), {{w[i - 1], 1}, {w[i], -1}}, Sense::Ge, 0);
        for (Coalition s = 0; s <= full; ++s) {
            std::vector<Term> terms{{q, 1}, {x(s), big}};
            for (int i : members(s)) terms.push_back({w[i - 1], -1});
            m.add_row(nm("win", {static_cast<long>(s)}), terms, Sense::Le, big);
            m.add_row(nm("lose", {static_cast<long>(s)}), terms, Sense::Ge, 1);
        }
    }
    if (proper || strong) {
        for (Coalition s = 0; s <= full; ++s) {
            if (2 * cardinality(s) > n) continue;
            std::vector<Term> terms{{x(s), 1}, {x(full & ~s), 1}};
            if (proper) m.add_row(nm("proper", {static_cast<long>(s)}), terms, Sense::Le, 1);
            if (strong) m.add_row(nm("strong", {static_cast<long>(s)}), terms, Sense::Ge, 1);
        }
    }
}

Q pow2(int e) { return Q(Z(1) << e); }

std::vector<Q> semivalue_coefficients(const IndexId& id, int n) {
    std::vector<Q> c(n);
    for (int size = 1; size <= n; ++size) {
        switch (id.tag) {
            case IndexTag::SSI:
                c[size - 1] = frac(Z(factorial(size - 1) * factorial(n - size)), Z(factorial(n)));
                break;
            case IndexTag::Semivalue: {
                auto p = id.semivalue_p.empty() ? shapley_semivalue_weights(n) : id.semivalue_p;
                if (!valid_semivalue_weights(p, n))
                    throw std::invalid_argument("semivalue weights must be nonnegative with sum p_j*C(n-1,j) = 1");
                c[size - 1] = p[size - 1];
                break;
            }
            case IndexTag::PBinomial:
                if (id.binomial_p <= 0 || id.binomial_p >= 1)
                    throw std::invalid_argument("p-binomial parameter must lie strictly inside (0,1)");
                c[size - 1] = power(id.binomial_p, size - 1) * power(Q(1 - id.binomial_p), n - size);
                break;
            case IndexTag::Bz: c[size - 1] = 1 / pow2(n - 1); break;
            default: c[size - 1] = 1; break;
        }
    }
    return c;
}

class IndexBlock {
public:
    IndexBlock(Model& m, int n, const BuildOptions& options) : m_(m), n_(n), full_(full_coalition(n)), options_(options) {}

    void build(const IndexId& id) {
        declare(id);
        switch (id.tag) {
            case IndexTag::SSI: ssi(); break;
            case IndexTag::Tijs: options_.tijs_unique_mwc ? tijs_unique_mwc() : tijs_vetoer(); break;
            case IndexTag::Semivalue: case IndexTag::PBinomial: case IndexTag::Bz: case IndexTag::Swing:
                swing_z();
                scaled_swing(semivalue_coefficients(id, n_));
                break;
            case IndexTag::ColPrev: swing_z(); winning_share(false); colprev(); break;
            case IndexTag::ColIni: colini(); break;
            case IndexTag::Rae: rae(); break;
            case IndexTag::KB: winning_share(false); kb(); break;
            case IndexTag::PHI: winning_share(true); phi(); break;
            case IndexTag::Chow: chow(); break;
            case IndexTag::JS: swing_z(); js(); break;
            case IndexTag::PGI: minimal(false, false); break;
            case IndexTag::DP: minimal(true, false); break;
            case IndexTag::Shift: minimal(false, true); break;
            case IndexTag::SDP: minimal(true, true); break;
        }
        for (int i = 1; i <= n_; ++i) {
            std::vector<Term> terms{{p(i), 1}};
            for (Coalition s = 0; s <= full_; ++s) terms.push_back({y(i, s), -1});
            m_.add_row(nm("power", {i}), terms, Sense::Eq, 0);
        }
    }

private:
    Model& m_;
    int n_;
    Coalition full_;
    BuildOptions options_;

    int x(Coalition s) const { return m_.var(x_name(s)); }
    int y(int i, Coalition s) const { return m_.var(nm("y", {i, static_cast<long>(s)})); }
    int z(int i, Coalition s) const { return m_.var(nm("z", {i, static_cast<long>(s)})); }
    int a(Coalition s) const { return m_.var(nm("a", {static_cast<long>(s)})); }
    int p(int i) const { return m_.var(nm("p", {i})); }
    static long L(Coalition s) { return static_cast<long>(s); }

    void declare(const IndexId& id) {
        auto tag = id.tag;
        bool uses_z = tag == IndexTag::Semivalue || tag == IndexTag::PBinomial || tag == IndexTag::Bz ||
                      tag == IndexTag::Swing || tag == IndexTag::ColPrev || tag == IndexTag::JS;
        if (uses_z)
            for (int i = 1; i <= n_; ++i)
                for (Coalition s = 0; s <= full_; ++s) m_.add_var(nm("z", {i, L(s)}), VarKind::Binary, 0, Q(1));
        if (tag == IndexTag::Tijs && options_.tijs_unique_mwc) {
            for (Coalition s = 0; s <= full_; ++s) m_.add_var(nm("zm", {L(s)}), VarKind::Binary, 0, Q(1));
            m_.add_var("m", VarKind::Binary, 0, Q(1));
        }
        if (tag == IndexTag::ColPrev || tag == IndexTag::ColIni || tag == IndexTag::KB || tag == IndexTag::PHI)
            for (Coalition s = 0; s <= full_; ++s) m_.add_var(nm("a", {L(s)}), VarKind::Continuous, 0);
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) m_.add_var(nm("y", {i, L(s)}), VarKind::Continuous, 0);
        for (int i = 1; i <= n_; ++i) m_.add_var(nm("p", {i}), VarKind::Continuous, 0);
    }

    void zero(const std::string& prefix, int i, Coalition s) {
        m_.add_row(nm(prefix + "_zero", {i, L(s)}), {{y(i, s), 1}}, Sense::Eq, 0);
    }

    void ssi() {
        auto c = semivalue_coefficients(IndexId(IndexTag::SSI), n_);
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (!contains(s, i)) { zero("ssi", i, s); continue; }
                const Q& k = c[cardinality(s) - 1];
                Coalition r = s & ~bit(i);
                m_.add_row(nm("ssi_win", {i, L(s)}), {{y(i, s), 1}, {x(s), -k}}, Sense::Le, 0);
                m_.add_row(nm("ssi_crit", {i, L(s)}), {{y(i, s), 1}, {x(r), k}}, Sense::Le, k);
                m_.add_row(nm("ssi_swing", {i, L(s)}), {{y(i, s), 1}, {x(s), -k}, {x(r), k}}, Sense::Ge, 0);
            }
    }

    void tijs_vetoer() {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (s != full_) { zero("tijs", i, s); continue; }
                m_.add_row(nm("tijs_veto", {i}), {{y(i, s), 1}, {x(full_ & ~bit(i)), 1}}, Sense::Eq, 1);
            }
    }

    void tijs_unique_mwc() {
        auto zm = [&](Coalition s) { return m_.var(nm("zm", {L(s)})); };
        int mv = m_.var("m");
        for (Coalition s = 0; s <= full_; ++s) {
            m_.add_row(nm("mwc_win", {L(s)}), {{zm(s), 1}, {x(s), -1}}, Sense::Le, 0);
            std::vector<Term> lower{{zm(s), 1}, {x(s), -1}};
            for (int j : members(s)) {
                m_.add_row(nm("mwc_min", {L(s), j}), {{zm(s), 1}, {x(s & ~bit(j)), 1}}, Sense::Le, 1);
                lower.push_back({x(s & ~bit(j)), 1});
            }
            m_.add_row(nm("mwc_force", {L(s)}), lower, Sense::Ge, 0);
        }
        std::vector<Term> count{{mv, 1}};
        for (Coalition s = 0; s <= full_; ++s) count.push_back({zm(s), -1});
        m_.add_row("unique_some", count, Sense::Le, 0);
        for (Coalition s = 0; s <= full_; ++s) {
            std::vector<Term> terms{{mv, 1}, {zm(s), -1}};
            for (Coalition t = 0; t <= full_; ++t)
                if (t != s) terms.push_back({zm(t), 1});
            m_.add_row(nm("unique_force", {L(s)}), terms, Sense::Ge, 0);
        }
        Q span = pow2(n_) - 1;
        std::vector<Term> cap{{mv, span}};
        for (Coalition s = 0; s <= full_; ++s) cap.push_back({zm(s), 1});
        m_.add_row("unique_cap", cap, Sense::Le, Q(1 + span));
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                m_.add_row(nm("tijs_mwc", {i, L(s)}), {{y(i, s), 1}, {zm(s), -1}}, Sense::Le, 0);
                m_.add_row(nm("tijs_m", {i, L(s)}), {{y(i, s), 1}, {mv, -1}}, Sense::Le, 0);
                m_.add_row(nm("tijs_and", {i, L(s)}), {{y(i, s), 1}, {zm(s), -1}, {mv, -1}}, Sense::Ge, -1);
            }
    }

    void swing_z() {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                Coalition r = s & ~bit(i);
                m_.add_row(nm("swing_win", {i, L(s)}), {{z(i, s), 1}, {x(s), -1}}, Sense::Le, 0);
                m_.add_row(nm("swing_crit", {i, L(s)}), {{z(i, s), 1}, {x(r), 1}}, Sense::Le, 1);
                m_.add_row(nm("swing_force", {i, L(s)}), {{z(i, s), 1}, {x(s), -1}, {x(r), 1}}, Sense::Ge, 0);
            }
    }

    void scaled_swing(const std::vector<Q>& coef) {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (!contains(s, i)) { zero("semi", i, s); continue; }
                m_.add_row(nm("semi", {i, L(s)}), {{y(i, s), 1}, {z(i, s), -coef[cardinality(s) - 1]}}, Sense::Eq, 0);
            }
    }

    // a_S = 1/|W| on winning coalitions, or 1/sum|S| when weighted by size.
    void winning_share(bool by_size) {
        for (Coalition s = 0; s <= full_; ++s)
            m_.add_row(nm("share_win", {L(s)}), {{a(s), 1}, {x(s), -1}}, Sense::Le, 0);
        for (Coalition s = 0; s <= full_; ++s)
            for (Coalition t = 0; t <= full_; ++t)
                if (s != t)
                    m_.add_row(nm("share_eq", {L(s), L(t)}), {{a(s), 1}, {a(t), -1}, {x(s), -1}, {x(t), -1}}, Sense::Ge, -2);
        std::vector<Term> total;
        for (Coalition s = 0; s <= full_; ++s) total.push_back({a(s), by_size ? Q(cardinality(s)) : Q(1)});
        m_.add_row("share_sum", total, Sense::Eq, 1);
    }

    void colprev() {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                m_.add_row(nm("colprev_swing", {i, L(s)}), {{y(i, s), 1}, {z(i, s), -1}}, Sense::Le, 0);
                m_.add_row(nm("colprev_lo", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}, {z(i, s), -1}}, Sense::Ge, -1);
                m_.add_row(nm("colprev_hi", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}, {x(s), 1}}, Sense::Le, 1);
            }
    }

    void colini() {
        for (Coalition s = 0; s <= full_; ++s)
            m_.add_row(nm("lshare_lose", {L(s)}), {{a(s), 1}, {x(s), 1}}, Sense::Le, 1);
        for (Coalition s = 0; s <= full_; ++s)
            for (Coalition t = 0; t <= full_; ++t)
                if (s != t)
                    m_.add_row(nm("lshare_eq", {L(s), L(t)}), {{a(s), 1}, {a(t), -1}, {x(s), 1}, {x(t), 1}}, Sense::Ge, 0);
        std::vector<Term> total;
        for (Coalition s = 0; s <= full_; ++s) total.push_back({a(s), 1});
        m_.add_row("lshare_sum", total, Sense::Eq, 1);
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (contains(s, i)) { zero("colini", i, s); continue; }
                Coalition u = s | bit(i);
                m_.add_row(nm("colini_lose", {i, L(s)}), {{y(i, s), 1}, {x(s), 1}}, Sense::Le, 1);
                m_.add_row(nm("colini_join", {i, L(s)}), {{y(i, s), 1}, {x(u), -1}}, Sense::Le, 0);
                m_.add_row(nm("colini_lo", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}, {x(s), 1}, {x(u), -1}}, Sense::Ge, -1);
                m_.add_row(nm("colini_hi", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}, {x(s), -1}, {x(u), 1}}, Sense::Le, 1);
            }
    }

    void rae() {
        Q c = 1 / pow2(n_);
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (contains(s, i))
                    m_.add_row(nm("rae", {i, L(s)}), {{y(i, s), 1}, {x(s), -c}}, Sense::Eq, 0);
                else
                    m_.add_row(nm("rae", {i, L(s)}), {{y(i, s), 1}, {x(s), c}}, Sense::Eq, c);
            }
    }

    void kb() {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (!contains(s, i)) { zero("kb", i, s); continue; }
                m_.add_row(nm("kb", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}}, Sense::Eq, 0);
            }
    }

    void phi() {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (!contains(s, i)) { zero("phi", i, s); continue; }
                m_.add_row(nm("phi_win", {i, L(s)}), {{y(i, s), 1}, {x(s), -1}}, Sense::Le, 0);
                m_.add_row(nm("phi_lo", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}, {x(s), -1}}, Sense::Ge, -1);
                m_.add_row(nm("phi_hi", {i, L(s)}), {{y(i, s), 1}, {a(s), -1}, {x(s), 1}}, Sense::Le, 1);
            }
    }

    void chow() {
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (!contains(s, i)) { zero("chow", i, s); continue; }
                m_.add_row(nm("chow", {i, L(s)}), {{y(i, s), 1}, {x(s), -1}}, Sense::Eq, 0);
            }
    }

    void js() {
        for (Coalition s = 0; s <= full_; ++s) {
            std::vector<Term> total, total_vs_z;
            for (int i = 1; i <= n_; ++i) {
                m_.add_row(nm("js_swing", {i, L(s)}), {{y(i, s), 1}, {z(i, s), -1}}, Sense::Le, 0);
                for (int j = 1; j <= n_; ++j)
                    if (j != i)
                        m_.add_row(nm("js_eq", {i, j, L(s)}), {{y(i, s), 1}, {y(j, s), -1}, {z(i, s), -1}, {z(j, s), -1}},
                                   Sense::Ge, -2);
                total.push_back({y(i, s), 1});
                total_vs_z.push_back({y(i, s), 1});
            }
            for (int i = 1; i <= n_; ++i) total_vs_z.push_back({z(i, s), -1});
            m_.add_row(nm("js_cap", {L(s)}), total, Sense::Le, 1);
            m_.add_row(nm("js_none", {L(s)}), total_vs_z, Sense::Le, 0);
            for (int i = 1; i <= n_; ++i) {
                auto terms = total;
                terms.push_back({z(i, s), -1});
                m_.add_row(nm("js_some", {i, L(s)}), terms, Sense::Ge, 0);
            }
        }
    }

    // PGI/DP over S - j, Shift/SDP over the direct right-shifts of S.
    void minimal(bool divide, bool shifts) {
        std::string tag = shifts ? (divide ? "sdp" : "shift") : (divide ? "dp" : "pgi");
        for (int i = 1; i <= n_; ++i)
            for (Coalition s = 0; s <= full_; ++s) {
                if (!contains(s, i)) { zero(tag, i, s); continue; }
                Q c = divide ? frac(Z(1), Z(cardinality(s))) : Q(1);
                std::vector<Coalition> below;
                if (shifts) below = direct_right_shifts(s, n_);
                else
                    for (int j : members(s)) below.push_back(s & ~bit(j));
                m_.add_row(nm(tag + "_win", {i, L(s)}), {{y(i, s), 1}, {x(s), -c}}, Sense::Le, 0);
                std::vector<Term> lower{{y(i, s), 1}, {x(s), -c}};
                for (Coalition t : below) {
                    m_.add_row(nm(tag + "_min", {i, L(s), L(t)}), {{y(i, s), 1}, {x(t), c}}, Sense::Le, c);
                    lower.push_back({x(t), c});
                }
                m_.add_row(nm(tag + "_force", {i, L(s)}), lower, Sense::Ge, 0);
            }
    }
};

void add_deviation(Model& m, const InverseInstance& inst, std::optional<Q> alpha) {
    const int n = inst.n();
    std::vector<int> p;
    for (int i = 1; i <= n; ++i) p.push_back(m.var(nm("p", {i})));
    const bool linf = inst.norm == Norm::Linf;
    if (!alpha) {
        std::vector<int> d;
        if (linf) d.assign(n, m.add_var("d", VarKind::Continuous, 0));
        else
            for (int i = 1; i <= n; ++i) d.push_back(m.add_var(nm("d", {i}), VarKind::Continuous, 0));
        for (int i = 0; i < n; ++i) {
            m.add_row(nm("dev_above", {i + 1}), {{d[i], 1}, {p[i], -1}}, Sense::Ge, Q(-inst.sigma[i]));
            m.add_row(nm("dev_below", {i + 1}), {{d[i], 1}, {p[i], 1}}, Sense::Ge, inst.sigma[i]);
        }
        if (linf) m.objective = {{d[0], 1}};
        else
            for (int v : d) m.objective.push_back({v, 1});
        return;
    }
    std::vector<int> d;
    if (linf) d.assign(n, m.add_var("dp", VarKind::Continuous, 0));
    else
        for (int i = 1; i <= n; ++i) d.push_back(m.add_var(nm("dp", {i}), VarKind::Continuous, 0));
    for (int i = 0; i < n; ++i) {
        std::vector<Term> above{{d[i], 1}}, below{{d[i], 1}};
        for (int j = 0; j < n; ++j) {
            Q c = (i == j ? Q(1) : Q(0)) - inst.sigma[i];
            above.push_back({p[j], -c});
            below.push_back({p[j], c});
        }
        m.add_row(nm("ndev_above", {i + 1}), above, Sense::Ge, 0);
        m.add_row(nm("ndev_below", {i + 1}), below, Sense::Ge, 0);
    }
    std::vector<Term> budget;
    if (linf) budget.push_back({d[0], 1});
    else
        for (int v : d) budget.push_back({v, 1});
    for (int v : p) budget.push_back({v, -*alpha});
    m.add_row("alpha", budget, Sense::Le, 0);
}

}  // namespace

Model build_class_model(GameClass cls, int n, bool proper, bool strong) {
    if (n < 1 || n > 10) throw std::invalid_argument("ILP models are built for 1 <= n <= 10");
    Model m;
    add_x_vars(m, n);
    add_class_rows(m, cls, n, proper, strong);
    return m;
}

Model build_ilp(const InverseInstance& inst, std::optional<Q> normalized_alpha, const BuildOptions& options) {
    const int n = inst.n();
    if (inst.index.normalized && !normalized_alpha)
        throw std::invalid_argument("normalized index needs alpha: the model is a feasibility check per alpha");
    if (normalized_alpha && *normalized_alpha < 0) throw std::invalid_argument("alpha must be nonnegative");
    if (!has_ilp_block(inst.index)) throw std::invalid_argument("no ILP block for " + inst.index.name());
    Model m = build_class_model(inst.cls, n, inst.proper, inst.strong);
    IndexBlock(m, n, options).build(inst.index);
    add_deviation(m, inst, normalized_alpha);
    return m;
}

// LP text ------------------------------------------------------------------

namespace {

bool terminating(const Q& v) {
    Z d = v.get_den();
    while (d % 2 == 0) d /= 2;
    while (d % 5 == 0) d /= 5;
    return d == 1;
}

std::string decimal(const Q& v) {
    if (!terminating(v)) throw std::logic_error("non-terminating decimal " + to_string(v));
    Z num = abs(v.get_num());
    Z den = v.get_den();
    int digits = 0;
    Z scale = 1;
    while ((scale * num) % den != 0) {
        scale *= 10;
        ++digits;
    }
    Z scaled = scale * num / den;
    std::string s = scaled.get_str();
    if (digits > 0) {
        if (static_cast<int>(s.size()) <= digits) s.insert(0, digits + 1 - s.size(), '0');
        s.insert(s.size() - digits, ".");
    }
    return (v < 0 ? "-" : "") + s;
}

constexpr std::size_t kTermsPerLine = 8;

std::string terms_text(const Model& m, const std::vector<Term>& terms, const Q& scale) {
    std::ostringstream out;
    for (std::size_t k = 0; k < terms.size(); ++k) {
        if (k > 0 && k % kTermsPerLine == 0) out << "\n  ";
        Q c = terms[k].coef * scale;
        bool neg = c < 0;
        if (neg) c = -c;
        if (k == 0) out << (neg ? " - " : " ");
        else out << (neg ? " - " : " + ");
        if (c != 1) out << decimal(c) << " ";
        out << m.vars[terms[k].var].name;
    }
    return out.str();
}

std::string sense_text(Sense s) {
    switch (s) {
        case Sense::Le: return "<=";
        case Sense::Ge: return ">=";
        case Sense::Eq: return "=";
    }
    return "=";
}

Q row_scale(const Constraint& c) {
    bool exact = terminating(c.rhs);
    for (const auto& t : c.terms) exact = exact && terminating(t.coef);
    if (exact) return 1;
    Z l = c.rhs.get_den();
    for (const auto& t : c.terms) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coef.get_den_mpz_t());
    return Q(l);
}

}  // namespace

std::string emit_lp(const Model& m) {
    std::ostringstream out;
    out << "Minimize\n obj:" << terms_text(m, m.objective, 1) << "\n";
    out << "Subject To\n";
    for (const auto& c : m.rows) {
        Q scale = row_scale(c);
        out << " " << c.name << ":" << terms_text(m, c.terms, scale) << " " << sense_text(c.sense) << " "
            << decimal(c.rhs * scale) << "\n";
    }
    out << "Bounds\n";
    for (const auto& v : m.vars) {
        if (v.kind == VarKind::Binary) continue;
        if (v.upper) out << " " << decimal(v.lower) << " <= " << v.name << " <= " << decimal(*v.upper) << "\n";
        else out << " " << v.name << " >= " << decimal(v.lower) << "\n";
    }
    out << "Binary\n";
    for (const auto& v : m.vars)
        if (v.kind == VarKind::Binary) out << " " << v.name << "\n";
    out << "End\n";
    return out.str();
}

namespace {

std::vector<std::string> tokens_of(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string t;
    while (in >> t) out.push_back(t);
    return out;
}

bool is_number(const std::string& t) {
    return !t.empty() && (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.' ||
                          ((t[0] == '-' || t[0] == '+') && t.size() > 1));
}

std::vector<Term> parse_terms(const Model& m, const std::vector<std::string>& toks, std::size_t& pos) {
    std::vector<Term> terms;
    while (pos < toks.size()) {
        const auto& t = toks[pos];
        if (t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>") break;
        Q sign = 1;
        if (t == "+" || t == "-") {
            sign = t == "-" ? -1 : 1;
            ++pos;
        }
        if (pos >= toks.size()) throw std::invalid_argument("LP: dangling sign");
        Q coef = 1;
        if (is_number(toks[pos])) {
            coef = parse_rational(toks[pos]);
            ++pos;
        }
        if (pos >= toks.size()) throw std::invalid_argument("LP: coefficient without variable");
        int v = m.find(toks[pos]);
        if (v < 0) throw std::invalid_argument("LP: undeclared variable " + toks[pos]);
        terms.push_back({v, sign * coef});
        ++pos;
    }
    return terms;
}

}  // namespace

Model parse_lp(const std::string& text) {
    enum Section { None, Objective, Rows, Bounds, Binaries, Done };
    std::vector<std::string> objective, rows, bounds, binaries;
    Section section = None;
    std::istringstream in(text);
    std::string line;
    auto lower = [](std::string s) {
        for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        return s;
    };
    while (std::getline(in, line)) {
        auto toks = tokens_of(line);
        if (toks.empty()) continue;
        std::string head = lower(line.substr(line.find_first_not_of(" \t")));
        while (!head.empty() && std::isspace(static_cast<unsigned char>(head.back()))) head.pop_back();
        if (head == "minimize") { section = Objective; continue; }
        if (head == "subject to" || head == "st" || head == "s.t.") { section = Rows; continue; }
        if (head == "bounds") { section = Bounds; continue; }
        if (head == "binary" || head == "binaries") { section = Binaries; continue; }
        if (head == "end") { section = Done; continue; }
        switch (section) {
            case Objective: objective.push_back(line); break;
            case Rows:
                if (line.find(':') != std::string::npos || rows.empty()) rows.push_back(line);
                else rows.back() += " " + line;
                break;
            case Bounds: bounds.push_back(line); break;
            case Binaries:
                for (auto& t : toks) binaries.push_back(t);
                break;
            default: throw std::invalid_argument("LP: text outside a section: " + line);
        }
    }
    Model m;
    for (const auto& b : bounds) {
        auto t = tokens_of(b);
        if (t.size() == 3 && t[1] == ">=") m.add_var(t[0], VarKind::Continuous, parse_rational(t[2]));
        else if (t.size() == 5 && t[1] == "<=" && t[3] == "<=")
            m.add_var(t[2], VarKind::Continuous, parse_rational(t[0]), parse_rational(t[4]));
        else throw std::invalid_argument("LP: unsupported bound: " + b);
    }
    for (const auto& name : binaries) {
        if (m.find(name) >= 0) throw std::invalid_argument("LP: binary with explicit bounds: " + name);
        m.add_var(name, VarKind::Binary, 0, Q(1));
    }
    std::string obj;
    for (const auto& l : objective) obj += " " + l;
    auto colon = obj.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("LP: objective needs a name");
    auto otoks = tokens_of(obj.substr(colon + 1));
    std::size_t pos = 0;
    m.objective = parse_terms(m, otoks, pos);
    if (pos != otoks.size()) throw std::invalid_argument("LP: objective has a sense");
    for (const auto& r : rows) {
        auto c = r.find(':');
        if (c == std::string::npos) throw std::invalid_argument("LP: unnamed row: " + r);
        std::string name = tokens_of(r.substr(0, c)).at(0);
        auto toks = tokens_of(r.substr(c + 1));
        std::size_t p = 0;
        auto terms = parse_terms(m, toks, p);
        if (p + 2 != toks.size()) throw std::invalid_argument("LP: malformed row " + name);
        Sense sense = toks[p] == "=" ? Sense::Eq : (toks[p][0] == '<' || toks[p] == "=<") ? Sense::Le : Sense::Ge;
        Constraint con{name, std::move(terms), sense, parse_rational(toks[p + 1])};
        m.rows.push_back(std::move(con));
    }
    return m;
}

// Semantics -----------------------------------------------------------------

std::map<int, Q> incidence_assignment(const Model& model, const Game& g) {
    std::map<int, Q> fixed;
    for (Coalition s = 0; s <= g.full(); ++s) fixed[model.var(x_name(s))] = g.wins(s) ? 1 : 0;
    return fixed;
}

namespace {

struct Bound {
    std::optional<Q> lo, hi;
};

// Returns false on a detected contradiction.
bool propagate(const Model& m, std::vector<Bound>& b) {
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& row : m.rows) {
            for (int pass = 0; pass < 2; ++pass) {
                // pass 0 reads the row as sum <= rhs, pass 1 as -sum <= -rhs
                if (pass == 0 && row.sense == Sense::Ge) continue;
                if (pass == 1 && row.sense == Sense::Le) continue;
                Q sign = pass == 0 ? 1 : -1;
                Q rhs = sign * row.rhs;
                // minimal activity, with the count of unbounded contributions
                Q minact = 0;
                int unbounded = 0;
                int unbounded_var = -1;
                for (const auto& t : row.terms) {
                    Q c = sign * t.coef;
                    const auto& lim = c > 0 ? b[t.var].lo : b[t.var].hi;
                    if (!lim) {
                        ++unbounded;
                        unbounded_var = t.var;
                    } else {
                        minact += c * *lim;
                    }
                }
                if (unbounded == 0 && minact > rhs) return false;
                if (unbounded > 1) continue;
                for (const auto& t : row.terms) {
                    const auto& v = m.vars[t.var];
                    if (v.kind != VarKind::Binary) continue;
                    if (b[t.var].lo && b[t.var].hi && *b[t.var].lo == *b[t.var].hi) continue;
                    if (unbounded == 1 && unbounded_var != t.var) continue;
                    Q c = sign * t.coef;
                    Q own = c > 0 ? c * *b[t.var].lo : c * *b[t.var].hi;
                    Q slack = rhs - (minact - (unbounded ? Q(0) : own));
                    // c * v <= slack
                    if (c > 0) {
                        Q limit = slack / c;
                        if (limit < 0) return false;
                        if (limit < 1) {
                            b[t.var].hi = Q(0);
                            changed = true;
                        }
                    } else {
                        Q limit = slack / c;  // v >= limit
                        if (limit > 1) return false;
                        if (limit > 0) {
                            b[t.var].lo = Q(1);
                            changed = true;
                        }
                    }
                }
            }
        }
    }
    return true;
}

struct Leaf {
    bool feasible = false;
    bool bounded = true;
    Q lo, hi;
};

Leaf solve_leaf(const Model& m, const std::vector<Bound>& b, const std::vector<Term>& target, bool want_range) {
    Leaf leaf;
    lp::Problem prob;
    std::vector<int> col(m.vars.size(), -1);
    std::vector<Q> value(m.vars.size());
    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        if (b[v].lo && b[v].hi && *b[v].lo == *b[v].hi) {
            value[v] = *b[v].lo;
            continue;
        }
        col[v] = prob.add_var(b[v].lo, b[v].hi);
    }
    for (const auto& row : m.rows) {
        Q rhs = row.rhs;
        std::vector<Term> terms;
        for (const auto& t : row.terms) {
            if (col[t.var] < 0) rhs -= t.coef * value[t.var];
            else terms.push_back({col[t.var], t.coef});
        }
        if (terms.empty()) {
            bool ok = row.sense == Sense::Le ? 0 <= rhs : row.sense == Sense::Ge ? 0 >= rhs : rhs == 0;
            if (!ok) return leaf;
            continue;
        }
        prob.add_row(std::move(terms), row.sense, rhs);
    }
    Q offset = 0;
    std::vector<Term> obj;
    for (const auto& t : target) {
        if (col[t.var] < 0) offset += t.coef * value[t.var];
        else obj.push_back({col[t.var], t.coef});
    }
    prob.objective = obj;
    auto low = lp::solve(prob);
    if (low.status == lp::Status::Infeasible) return leaf;
    leaf.feasible = true;
    if (low.status == lp::Status::Unbounded) {
        leaf.bounded = false;
        return leaf;
    }
    leaf.lo = low.objective + offset;
    if (!want_range) return leaf;
    for (auto& t : prob.objective) t.coef = -t.coef;
    auto high = lp::solve(prob);
    if (high.status != lp::Status::Optimal) {
        leaf.bounded = false;
        return leaf;
    }
    leaf.hi = -high.objective + offset;
    return leaf;
}

constexpr int kMaxBranchDepth = 24;

void explore(const Model& m, std::vector<Bound> b, const std::vector<Term>& target, bool want_range, int depth,
             Range& acc, bool& bounded, bool stop_on_first) {
    if (stop_on_first && acc.feasible) return;
    if (!propagate(m, b)) return;
    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        if (m.vars[v].kind != VarKind::Binary) continue;
        if (*b[v].lo == *b[v].hi) continue;
        if (depth >= kMaxBranchDepth) throw std::runtime_error("branching depth exceeded");
        for (int val = 0; val <= 1; ++val) {
            auto nb = b;
            nb[v].lo = nb[v].hi = Q(val);
            explore(m, nb, target, want_range, depth + 1, acc, bounded, stop_on_first);
        }
        return;
    }
    auto leaf = solve_leaf(m, b, target, want_range);
    if (!leaf.feasible) return;
    if (!leaf.bounded) {
        bounded = false;
        acc.feasible = true;
        return;
    }
    if (!acc.feasible) {
        acc.feasible = true;
        acc.lo = leaf.lo;
        acc.hi = want_range ? leaf.hi : leaf.lo;
    } else {
        if (leaf.lo < acc.lo) acc.lo = leaf.lo;
        if (want_range && leaf.hi > acc.hi) acc.hi = leaf.hi;
    }
}

std::vector<Bound> initial_bounds(const Model& m, const std::map<int, Q>& fixed) {
    std::vector<Bound> b(m.vars.size());
    for (std::size_t v = 0; v < m.vars.size(); ++v) {
        b[v].lo = m.vars[v].lower;
        b[v].hi = m.vars[v].upper;
    }
    for (const auto& [v, val] : fixed) b[v].lo = b[v].hi = val;
    return b;
}

}  // namespace

Range range_under(const Model& model, const std::map<int, Q>& fixed, const std::vector<Term>& target, bool with_max) {
    Range acc;
    bool bounded = true;
    explore(model, initial_bounds(model, fixed), target, with_max, 0, acc, bounded, false);
    if (!bounded) throw std::runtime_error("target is unbounded on the feasible set");
    return acc;
}

bool feasible_under(const Model& model, const std::map<int, Q>& fixed) {
    Range acc;
    bool bounded = true;
    explore(model, initial_bounds(model, fixed), {}, false, 0, acc, bounded, true);
    return acc.feasible;
}

bool in_model_class(const Game& g, GameClass cls) {
    if (g.wins(0) || !g.wins(g.full())) return false;
    switch (cls) {
        case GameClass::Boolean: return is_boolean(g);
        case GameClass::Simple: return is_simple(g);
        case GameClass::Complete: return is_complete(g);
        case GameClass::Weighted: return is_complete(g) && is_weighted(g).has_value();
    }
    return false;
}

std::vector<IndexId> ilp_indices() {
    std::vector<IndexId> out;
    for (auto tag : all_index_tags()) out.emplace_back(tag);
    out.push_back(IndexId::pbinomial(Q(1, 3)));
    return out;
}

SemanticsReport verify_model_semantics(int n, GameClass cls, const std::vector<IndexId>& indices,
                                       const BuildOptions& options) {
    if (n < 1 || n > 3) throw std::invalid_argument("verify_model_semantics needs n <= 3");
    SemanticsReport rep;
    rep.n = n;
    rep.cls = cls;
    const Coalition full = full_coalition(n);
    Model cm = build_class_model(cls, n);
    std::vector<Game> members_found;
    const std::size_t free_bits = (std::size_t{1} << n) - 2;
    for (std::size_t code = 0; code < (std::size_t{1} << free_bits); ++code) {
        std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
        table[full] = 1;
        for (std::size_t k = 0; k < free_bits; ++k) table[k + 1] = (code >> k) & 1;
        Game g(n, table);
        ++rep.assignments;
        bool feasible = feasible_under(cm, incidence_assignment(cm, g));
        bool expected = in_model_class(g, cls);
        if (feasible) ++rep.feasible;
        if (expected) {
            ++rep.expected;
            members_found.push_back(g);
        }
        if (feasible != expected) {
            ++rep.class_mismatches;
            rep.failures.push_back("class mismatch at " + game_to_json(g));
        }
    }
    std::vector<Q> sigma(n, frac(Z(1), Z(n)));
    for (const auto& id : indices) {
        for (Norm norm : {Norm::L1, Norm::Linf}) {
            InverseInstance inst{sigma, id.with_normalized(false), cls, false, false, norm};
            Model m = build_ilp(inst, std::nullopt, options);
            for (const auto& g : members_found) {
                if (requires_fixed_order(id.tag) && !is_complete(g)) continue;
                auto expected = absolute_values(g, id.with_normalized(false));
                auto fixed = incidence_assignment(m, g);
                ++rep.index_checks;
                bool ok = true;
                if (norm == Norm::L1) {
                    for (int i = 1; i <= n && ok; ++i) {
                        auto r = range_under(m, fixed, {{m.var(nm("p", {i})), 1}});
                        ok = r.feasible && r.lo == expected[i - 1] && r.hi == expected[i - 1];
                    }
                }
                Q want = norm == Norm::L1 ? l1_distance(expected, sigma) : linf_distance(expected, sigma);
                if (ok) {
                    auto r = range_under(m, fixed, m.objective, false);
                    ok = r.feasible && r.lo == want;
                }
                if (!ok) {
                    ++rep.index_mismatches;
                    rep.failures.push_back(id.name() + " " + to_string(norm) + " at " + game_to_json(g));
                }
            }
        }
    }
    return rep;
}

}  // namespace vpower::ilp
