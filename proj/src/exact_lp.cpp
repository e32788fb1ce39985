#include "vpower/exact_lp.hpp"

#include <stdexcept>

namespace vpower::lp {

int Problem::add_var(std::optional<Q> lo, std::optional<Q> hi) {
    lower.push_back(std::move(lo));
    upper.push_back(std::move(hi));
    return static_cast<int>(lower.size()) - 1;
}

void Problem::add_row(std::vector<Term> terms, Sense sense, Q rhs) {
    rows.push_back(Row{std::move(terms), sense, std::move(rhs)});
}

namespace {

// Original variable v = offset + sign_pos * y[pos] - (neg >= 0 ? y[neg] : 0).
struct VarMap {
    Q offset;
    int pos;
    int neg;
    int sign;
};

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols)
        : a_(rows, std::vector<Q>(cols + 1)), basis_(rows, -1), cols_(cols) {}

    std::vector<std::vector<Q>>& a() { return a_; }
    std::vector<int>& basis() { return basis_; }
    std::size_t cols() const { return cols_; }

    void pivot(std::size_t r, std::size_t c) {
        Q inv = 1 / a_[r][c];
        for (auto& v : a_[r])
            if (v != 0) v *= inv;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (i == r || a_[i][c] == 0) continue;
            Q f = a_[i][c];
            for (std::size_t j = 0; j <= cols_; ++j)
                if (a_[r][j] != 0) a_[i][j] -= f * a_[r][j];
        }
        if (cost_.size()) {
            if (cost_[c] != 0) {
                Q f = cost_[c];
                for (std::size_t j = 0; j <= cols_; ++j)
                    if (a_[r][j] != 0) cost_[j] -= f * a_[r][j];
            }
        }
        basis_[r] = static_cast<int>(c);
    }

    // Reduced cost row; the last entry holds minus the objective value.
    void set_cost(const std::vector<Q>& c) {
        cost_.assign(cols_ + 1, Q(0));
        for (std::size_t j = 0; j < cols_; ++j) cost_[j] = c[j];
        for (std::size_t i = 0; i < a_.size(); ++i) {
            Q cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= cols_; ++j)
                if (a_[i][j] != 0) cost_[j] -= cb * a_[i][j];
        }
    }

    // Returns false when unbounded.
    bool run(const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = cols_;
            for (std::size_t j = 0; j < cols_; ++j) {
                if (allowed[j] && cost_[j] < 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols_) return true;
            std::size_t leave = a_.size();
            Q best;
            for (std::size_t i = 0; i < a_.size(); ++i) {
                if (a_[i][enter] <= 0) continue;
                Q ratio = a_[i][cols_] / a_[i][enter];
                if (leave == a_.size() || ratio < best ||
                    (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == a_.size()) return false;
            pivot(leave, enter);
        }
    }

    Q objective() const { return -cost_[cols_]; }

    void drop_row(std::size_t r) {
        a_.erase(a_.begin() + static_cast<long>(r));
        basis_.erase(basis_.begin() + static_cast<long>(r));
    }

private:
    std::vector<std::vector<Q>> a_;
    std::vector<int> basis_;
    std::vector<Q> cost_;
    std::size_t cols_;
};

}  // namespace

Result solve(const Problem& problem) {
    const int nv = problem.num_vars();
    std::vector<VarMap> map(nv);
    int ny = 0;
    std::vector<std::pair<int, Q>> upper_rows;  // y[idx] <= value
    for (int v = 0; v < nv; ++v) {
        const auto& lo = problem.lower[v];
        const auto& hi = problem.upper[v];
        if (lo) {
            map[v] = {*lo, ny++, -1, 1};
            if (hi) {
                if (*hi < *lo) return Result{Status::Infeasible, 0, {}};
                upper_rows.emplace_back(map[v].pos, *hi - *lo);
            }
        } else if (hi) {
            map[v] = {*hi, ny++, -1, -1};
        } else {
            map[v] = {0, ny, ny + 1, 1};
            ny += 2;
        }
    }

    struct StdRow {
        std::vector<Q> coef;
        Sense sense;
        Q rhs;
    };
    std::vector<StdRow> rows;
    for (const auto& row : problem.rows) {
        StdRow s{std::vector<Q>(ny), row.sense, row.rhs};
        for (const auto& t : row.terms) {
            const auto& m = map[t.var];
            s.rhs -= t.coef * m.offset;
            s.coef[m.pos] += t.coef * m.sign;
            if (m.neg >= 0) s.coef[m.neg] -= t.coef;
        }
        rows.push_back(std::move(s));
    }
    for (const auto& [idx, val] : upper_rows) {
        StdRow s{std::vector<Q>(ny), Sense::Le, val};
        s.coef[idx] = 1;
        rows.push_back(std::move(s));
    }

    // Columns: y (ny), one slack per inequality, then artificials.
    const std::size_t m = rows.size();
    std::vector<int> slack(m, -1);
    int ncols = ny;
    for (std::size_t i = 0; i < m; ++i)
        if (rows[i].sense != Sense::Eq) slack[i] = ncols++;
    std::vector<int> art(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        // After the sign flip below the slack enters with +1 exactly in these cases.
        bool slack_basic = rows[i].sense == Sense::Le && rows[i].rhs >= 0;
        slack_basic = slack_basic || (rows[i].sense == Sense::Ge && rows[i].rhs <= 0);
        if (!slack_basic) art[i] = ncols++;
    }

    Tableau tab(m, static_cast<std::size_t>(ncols));
    auto& a = tab.a();
    for (std::size_t i = 0; i < m; ++i) {
        for (int j = 0; j < ny; ++j) a[i][j] = rows[i].coef[j];
        if (slack[i] >= 0) a[i][slack[i]] = rows[i].sense == Sense::Le ? 1 : -1;
        a[i][ncols] = rows[i].rhs;
        if (rows[i].rhs < 0 || (rows[i].sense == Sense::Ge && rows[i].rhs == 0))
            for (auto& v : a[i]) v = -v;
        if (art[i] >= 0) {
            a[i][art[i]] = 1;
            tab.basis()[i] = art[i];
        } else {
            tab.basis()[i] = slack[i];
        }
    }

    std::vector<bool> is_art(ncols, false);
    for (std::size_t i = 0; i < m; ++i)
        if (art[i] >= 0) is_art[art[i]] = true;

    std::vector<bool> allowed(ncols, true);
    bool any_art = false;
    for (bool b : is_art) any_art = any_art || b;
    if (any_art) {
        std::vector<Q> c1(ncols);
        for (int j = 0; j < ncols; ++j)
            if (is_art[j]) c1[j] = 1;
        tab.set_cost(c1);
        tab.run(allowed);
        if (tab.objective() != 0) return Result{Status::Infeasible, 0, {}};
        for (std::size_t i = 0; i < tab.a().size();) {
            if (!is_art[tab.basis()[i]]) {
                ++i;
                continue;
            }
            int col = -1;
            for (int j = 0; j < ncols; ++j) {
                if (!is_art[j] && tab.a()[i][j] != 0) {
                    col = j;
                    break;
                }
            }
            if (col < 0) {
                tab.drop_row(i);
            } else {
                tab.pivot(i, static_cast<std::size_t>(col));
                ++i;
            }
        }
        for (int j = 0; j < ncols; ++j)
            if (is_art[j]) allowed[j] = false;
    }

    std::vector<Q> c2(ncols);
    Q const_obj = 0;
    for (const auto& t : problem.objective) {
        const auto& mp = map[t.var];
        const_obj += t.coef * mp.offset;
        c2[mp.pos] += t.coef * mp.sign;
        if (mp.neg >= 0) c2[mp.neg] -= t.coef;
    }
    tab.set_cost(c2);
    if (!tab.run(allowed)) return Result{Status::Unbounded, 0, {}};

    std::vector<Q> y(ncols);
    for (std::size_t i = 0; i < tab.a().size(); ++i) y[tab.basis()[i]] = tab.a()[i][ncols];
    Result res;
    res.status = Status::Optimal;
    res.objective = tab.objective() + const_obj;
    res.x.resize(nv);
    for (int v = 0; v < nv; ++v) {
        const auto& mp = map[v];
        Q val = mp.offset + mp.sign * y[mp.pos];
        if (mp.neg >= 0) val -= y[mp.neg];
        res.x[v] = val;
    }
    return res;
}

}  // namespace vpower::lp
