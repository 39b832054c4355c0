#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hullcert/rational.hpp"

namespace hullcert {

enum class Relation { LessEq, Equal, GreaterEq };
enum class Objective { Minimize, Maximize };

struct LinearConstraint {
    std::vector<Rational> coeffs;
    Relation rel{Relation::LessEq};
    Rational rhs{0};
};

/// Bounds of one variable. The default is the standard LP convention
/// (nonnegative, no upper bound); a disengaged lower bound makes the
/// variable free.
struct VariableBounds {
    std::optional<Rational> lower{Rational(0)};
    std::optional<Rational> upper{};
};

struct LPProblem {
    Objective sense{Objective::Minimize};
    std::vector<Rational> objective;
    std::vector<LinearConstraint> constraints;
    std::vector<VariableBounds> bounds; // empty means all-default

    std::size_t num_vars() const { return objective.size(); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

inline std::string to_string(LPStatus s) {
    switch (s) {
        case LPStatus::Optimal: return "optimal";
        case LPStatus::Infeasible: return "infeasible";
        default: return "unbounded";
    }
}

/// When Optimal, the witness satisfies every constraint exactly and attains
/// the value exactly; both facts are re-checked before the solution is
/// returned, together with an exact dual certificate of optimality.
struct LPSolution {
    LPStatus status{LPStatus::Infeasible};
    Rational value{0};
    std::vector<Rational> witness;
};

namespace detail {

inline void validate_problem(const LPProblem& p) {
    const std::size_t n = p.num_vars();
    if (n == 0) throw validation_error("LP with no variables");
    for (const auto& c : p.constraints)
        if (c.coeffs.size() != n) throw validation_error("LP constraint row has wrong width");
    if (!p.bounds.empty() && p.bounds.size() != n)
        throw validation_error("LP bounds list has wrong length");
}

inline int sgn(const BigInt& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

/// Simplex over an integer tableau T with positive scalar `det`; the true
/// dictionary entry is T[i][j] / det (Cramer-scaled basis representation).
/// Integer pivoting keeps every entry integral with exact divisions only,
/// so no gcd normalization is ever needed inside the hot loop.
class SimplexTableau {
public:
    // columns: [0, n_struct) structural, then slack/surplus, then artificials,
    // and the rhs as the final column.
    int n_struct = 0;
    int n_cols = 0; // without rhs
    int first_artificial = 0;
    std::vector<std::vector<BigInt>> rows;  // m constraint rows
    std::vector<BigInt> obj;                // phase-2 objective row (length n_cols + 1)
    std::vector<BigInt> phase1;             // phase-1 objective row
    std::vector<int> basis;                 // basic column per row
    std::vector<bool> alive;                // redundant rows are retired, not erased
    BigInt det{1};

    int m() const { return static_cast<int>(rows.size()); }
    int rhs_col() const { return n_cols; }

    bool is_artificial(int col) const { return col >= first_artificial; }

    void pivot(int r, int s) {
        BigInt piv = rows[r][s];
        if (piv == 0) throw internal_soundness_error("pivot on zero element");
        const int sigma = sgn(piv);
        BigInt newdet = sigma > 0 ? piv : BigInt(-piv);
        // T'[i][j] = sign(piv) * (T[i][j]*piv - T[i][s]*T[r][j]) / det, an
        // exact division: both sides are the new dictionary entries scaled
        // by the new basis determinant (Cramer), hence integers.
        auto update_row = [&](std::vector<BigInt>& row) {
            BigInt row_s = std::move(row[s]);
            row[s] = 0;
            if (row_s == 0 && piv == det && sigma > 0) return;
            for (int j = 0; j <= n_cols; ++j) {
                if (j == s) continue;
                BigInt& v = row[j];
                if (v == 0 && row_s == 0) continue;
                v *= piv;
                v -= row_s * rows[r][j];
                mpz_divexact(v.backend().data(), v.backend().data(), det.backend().data());
                if (sigma < 0) mpz_neg(v.backend().data(), v.backend().data());
            }
        };
        for (int i = 0; i < m(); ++i)
            if (i != r) update_row(rows[i]);
        update_row(obj);
        update_row(phase1);
        if (sigma < 0)
            for (int j = 0; j <= n_cols; ++j) rows[r][j] = -rows[r][j];
        det = std::move(newdet);
        basis[r] = s;
    }

    /// Entering column. Dantzig (most negative reduced cost) while pivots
    /// remain under the threshold, then Bland's smallest-index rule, which
    /// rules out cycling from any dictionary. Artificial columns are never
    /// eligible; ties in the Dantzig phase break to the smaller index, so
    /// the whole path is deterministic.
    int entering(const std::vector<BigInt>& objrow, bool bland) const {
        int best = -1;
        for (int j = 0; j < first_artificial; ++j) {
            if (objrow[j] >= 0) continue;
            if (bland) return j;
            if (best < 0 || objrow[j] < objrow[best]) best = j;
        }
        return best;
    }

    /// Leaving row: minimal ratio, ties broken by the smallest basic
    /// column index (Bland-compatible). Returns -1 when the column is
    /// unbounded.
    int leaving(int s) const {
        int best = -1;
        for (int i = 0; i < m(); ++i) {
            if (!alive[i] || rows[i][s] <= 0) continue;
            if (best < 0) {
                best = i;
                continue;
            }
            // compare rhs_i / a_is with rhs_best / a_best,s; denominators positive
            BigInt lhs = rows[i][rhs_col()] * rows[best][s];
            BigInt rhsv = rows[best][rhs_col()] * rows[i][s];
            if (lhs < rhsv || (lhs == rhsv && basis[i] < basis[best])) best = i;
        }
        return best;
    }

    /// Pivots on the given objective row until optimal or unbounded.
    /// Returns false on unboundedness. Termination is guaranteed: after
    /// `dantzig_budget` pivots the rule degrades to Bland's, which cannot
    /// cycle.
    bool optimize(std::vector<BigInt>& objrow) {
        const long dantzig_budget = 200 + 20L * m();
        for (long iter = 0;; ++iter) {
            int s = entering(objrow, iter >= dantzig_budget);
            if (s < 0) return true;
            int r = leaving(s);
            if (r < 0) return false;
            pivot(r, s);
        }
    }
};

} // namespace detail

/// Exact rational LP solve: two-phase simplex with Bland's anti-cycling rule
/// (guaranteed termination, no perturbation). Every Optimal answer is
/// validated before returning: the witness is substituted into all original
/// constraints and the objective, and an exact dual-feasible vector with
/// equal objective value is constructed from the final basis.
inline LPSolution solve_lp(const LPProblem& problem) {
    detail::validate_problem(problem);
    const int n = static_cast<int>(problem.num_vars());
    const bool maximize = problem.sense == Objective::Maximize;

    static const VariableBounds kDefaultBounds{};
    auto bound = [&](int j) -> const VariableBounds& {
        return problem.bounds.empty() ? kDefaultBounds : problem.bounds[j];
    };

    // Internal columns: shifted x = lower + x' for lower-bounded variables,
    // split x = x+ - x- for free ones. Upper bounds become extra rows.
    struct VarMap {
        int col_pos;
        int col_neg; // -1 unless split
        Rational offset;
    };
    std::vector<VarMap> vmap(n);
    int n_internal = 0;
    for (int j = 0; j < n; ++j) {
        if (bound(j).lower) {
            vmap[j] = {n_internal++, -1, *bound(j).lower};
        } else {
            vmap[j] = {n_internal, n_internal + 1, Rational(0)};
            n_internal += 2;
        }
    }

    // Assemble rational rows over internal columns.
    struct Row {
        std::vector<Rational> a;
        Relation rel;
        Rational b;
    };
    std::vector<Row> rational_rows;
    auto add_row = [&](const std::vector<Rational>& orig_coeffs, Relation rel, Rational rhs) {
        Row row{std::vector<Rational>(n_internal, Rational(0)), rel, std::move(rhs)};
        for (int j = 0; j < n; ++j) {
            const Rational& c = orig_coeffs[j];
            if (c == 0) continue;
            row.a[vmap[j].col_pos] += c;
            if (vmap[j].col_neg >= 0) row.a[vmap[j].col_neg] -= c;
            row.b -= c * vmap[j].offset;
        }
        rational_rows.push_back(std::move(row));
    };
    for (const auto& c : problem.constraints) add_row(c.coeffs, c.rel, c.rhs);
    for (int j = 0; j < n; ++j) {
        if (!bound(j).upper) continue;
        std::vector<Rational> unit(n, Rational(0));
        unit[j] = Rational(1);
        add_row(unit, Relation::LessEq, *bound(j).upper);
    }

    // Normalize to nonnegative rhs, then scale each row to integers.
    for (auto& row : rational_rows) {
        if (row.b < 0) {
            for (auto& v : row.a) v = -v;
            row.b = -row.b;
            row.rel = row.rel == Relation::LessEq   ? Relation::GreaterEq
                      : row.rel == Relation::GreaterEq ? Relation::LessEq
                                                       : Relation::Equal;
        }
    }

    const int m = static_cast<int>(rational_rows.size());
    int n_slack = 0;
    for (const auto& row : rational_rows)
        if (row.rel != Relation::Equal) ++n_slack;
    int n_art = 0;
    for (const auto& row : rational_rows)
        if (row.rel != Relation::LessEq) ++n_art;

    detail::SimplexTableau tab;
    tab.n_struct = n_internal;
    tab.first_artificial = n_internal + n_slack;
    tab.n_cols = n_internal + n_slack + n_art;
    tab.rows.assign(m, std::vector<BigInt>(tab.n_cols + 1, BigInt(0)));
    tab.obj.assign(tab.n_cols + 1, BigInt(0));
    tab.phase1.assign(tab.n_cols + 1, BigInt(0));
    tab.basis.assign(m, -1);
    tab.alive.assign(m, true);

    auto lcm_of_denoms = [](const std::vector<Rational>& vals, const Rational& extra) {
        BigInt l(1);
        auto fold = [&](const Rational& q) { l = lcm(l, denominator(q)); };
        for (const auto& q : vals) fold(q);
        fold(extra);
        return l;
    };

    int slack_cursor = n_internal;
    int art_cursor = tab.first_artificial;
    std::vector<std::vector<BigInt>> initial_rows; // pristine copy for the dual check
    initial_rows.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Row& row = rational_rows[i];
        BigInt scale = lcm_of_denoms(row.a, row.b);
        for (int j = 0; j < n_internal; ++j) {
            Rational v = row.a[j] * Rational(scale);
            tab.rows[i][j] = numerator(v);
        }
        Rational b = row.b * Rational(scale);
        tab.rows[i][tab.rhs_col()] = numerator(b);
        if (row.rel == Relation::LessEq) {
            tab.rows[i][slack_cursor] = 1;
            tab.basis[i] = slack_cursor++;
        } else if (row.rel == Relation::GreaterEq) {
            tab.rows[i][slack_cursor++] = -1;
            tab.rows[i][art_cursor] = 1;
            tab.basis[i] = art_cursor++;
        } else {
            tab.rows[i][art_cursor] = 1;
            tab.basis[i] = art_cursor++;
        }
        initial_rows.push_back(tab.rows[i]);
    }

    // Scaled integer objective; minimization internally.
    std::vector<Rational> min_obj(n, Rational(0));
    for (int j = 0; j < n; ++j) min_obj[j] = maximize ? -problem.objective[j] : problem.objective[j];
    Rational obj_const(0);
    std::vector<Rational> internal_obj(n_internal, Rational(0));
    for (int j = 0; j < n; ++j) {
        internal_obj[vmap[j].col_pos] += min_obj[j];
        if (vmap[j].col_neg >= 0) internal_obj[vmap[j].col_neg] -= min_obj[j];
        obj_const += min_obj[j] * vmap[j].offset;
    }
    BigInt obj_scale = lcm_of_denoms(internal_obj, Rational(0));
    std::vector<BigInt> integer_costs(tab.n_cols, BigInt(0));
    for (int j = 0; j < n_internal; ++j) {
        Rational v = internal_obj[j] * Rational(obj_scale);
        tab.obj[j] = numerator(v);
        integer_costs[j] = tab.obj[j];
    }

    // Objective rows are stored in equation form with an implicit z column
    // whose coefficient stays -det: the current objective value is
    // -row[rhs]/det and the reduced cost of column j is row[j]/det, so the
    // entering test and the pivot update are identical to constraint rows.
    // Phase-1 row: min(sum of artificials) under the initial basis.
    for (int i = 0; i < m; ++i) {
        if (tab.basis[i] < tab.first_artificial) continue;
        for (int j = 0; j <= tab.n_cols; ++j) {
            if (j == tab.basis[i]) continue;
            tab.phase1[j] -= tab.rows[i][j];
        }
    }

    if (n_art > 0) {
        if (!tab.optimize(tab.phase1))
            throw internal_soundness_error("phase-1 objective unbounded");
        if (tab.phase1[tab.rhs_col()] != 0) {
            // z1 = -phase1[rhs]/det > 0: no feasible point exists.
            if (tab.phase1[tab.rhs_col()] > 0)
                throw internal_soundness_error("negative phase-1 optimum");
            return LPSolution{LPStatus::Infeasible, Rational(0), {}};
        }
        // Drive leftover basic artificials out; rows with no structural
        // support are redundant and retire.
        for (int i = 0; i < m; ++i) {
            if (tab.basis[i] < tab.first_artificial) continue;
            int s = -1;
            for (int j = 0; j < tab.first_artificial; ++j)
                if (tab.rows[i][j] != 0) {
                    s = j;
                    break;
                }
            if (s >= 0)
                tab.pivot(i, s);
            else
                tab.alive[i] = false;
        }
    }

    if (!tab.optimize(tab.obj)) return LPSolution{LPStatus::Unbounded, Rational(0), {}};

    // Extract witness in original variables.
    std::vector<Rational> internal_vals(tab.n_cols, Rational(0));
    for (int i = 0; i < m; ++i)
        internal_vals[tab.basis[i]] = Rational(tab.rows[i][tab.rhs_col()]) / Rational(tab.det);
    std::vector<Rational> witness(n, Rational(0));
    for (int j = 0; j < n; ++j) {
        witness[j] = vmap[j].offset + internal_vals[vmap[j].col_pos];
        if (vmap[j].col_neg >= 0) witness[j] -= internal_vals[vmap[j].col_neg];
    }
    Rational scaled_internal_value = -Rational(tab.obj[tab.rhs_col()]) / Rational(tab.det);
    Rational value = scaled_internal_value / Rational(obj_scale) + obj_const;
    if (maximize) value = -value;

    // --- exact self-checks -------------------------------------------------
    // 1. witness feasibility and objective value against the original data
    Rational objval(0);
    for (int j = 0; j < n; ++j) objval += problem.objective[j] * witness[j];
    if (objval != value) throw internal_soundness_error("LP witness does not attain the reported value");
    for (const auto& c : problem.constraints) {
        Rational lhs(0);
        for (int j = 0; j < n; ++j) lhs += c.coeffs[j] * witness[j];
        bool ok = c.rel == Relation::LessEq ? lhs <= c.rhs : c.rel == Relation::GreaterEq ? lhs >= c.rhs : lhs == c.rhs;
        if (!ok) throw internal_soundness_error("LP witness violates a constraint");
    }
    for (int j = 0; j < n; ++j) {
        if (bound(j).lower && witness[j] < *bound(j).lower)
            throw internal_soundness_error("LP witness violates a lower bound");
        if (bound(j).upper && witness[j] > *bound(j).upper)
            throw internal_soundness_error("LP witness violates an upper bound");
    }

    // 2. dual certificate on the internal standard form: solve B^T y = c_B,
    //    then check dual feasibility on all real columns and strong duality.
    {
        std::vector<std::vector<Rational>> bt(m, std::vector<Rational>(m + 1, Rational(0)));
        for (int i = 0; i < m; ++i) {
            for (int r2 = 0; r2 < m; ++r2) bt[i][r2] = Rational(initial_rows[r2][tab.basis[i]]);
            int bc = tab.basis[i];
            bt[i][m] = bc < static_cast<int>(integer_costs.size()) ? Rational(integer_costs[bc]) : Rational(0);
        }
        // Gaussian elimination, exact.
        std::vector<Rational> y(m, Rational(0));
        {
            int rank_row = 0;
            std::vector<int> pivot_col_of_row;
            for (int col = 0; col < m && rank_row < m; ++col) {
                int pr = -1;
                for (int i = rank_row; i < m; ++i)
                    if (bt[i][col] != 0) {
                        pr = i;
                        break;
                    }
                if (pr < 0) throw internal_soundness_error("singular LP basis");
                std::swap(bt[rank_row], bt[pr]);
                for (int i = 0; i < m; ++i) {
                    if (i == rank_row || bt[i][col] == 0) continue;
                    Rational f = bt[i][col] / bt[rank_row][col];
                    for (int j2 = col; j2 <= m; ++j2) bt[i][j2] -= f * bt[rank_row][j2];
                }
                pivot_col_of_row.push_back(col);
                ++rank_row;
            }
            for (int i = 0; i < m; ++i) y[pivot_col_of_row[i]] = bt[i][m] / bt[i][pivot_col_of_row[i]];
        }
        for (int j = 0; j < tab.first_artificial; ++j) {
            Rational reduced = j < static_cast<int>(integer_costs.size()) ? Rational(integer_costs[j]) : Rational(0);
            for (int i = 0; i < m; ++i) reduced -= y[i] * Rational(initial_rows[i][j]);
            if (reduced < 0) throw internal_soundness_error("LP dual certificate infeasible");
        }
        Rational dual_value(0);
        for (int i = 0; i < m; ++i) dual_value += y[i] * Rational(initial_rows[i][tab.rhs_col()]);
        if (dual_value != scaled_internal_value)
            throw internal_soundness_error("LP strong duality check failed");
    }

    return LPSolution{LPStatus::Optimal, value, std::move(witness)};
}

/// Plain-text dump of an LP instance for cross-checking with external tools.
inline std::string format_lp(const LPProblem& p) {
    detail::validate_problem(p);
    std::ostringstream out;
    out << (p.sense == Objective::Minimize ? "minimize" : "maximize") << "\n  ";
    for (std::size_t j = 0; j < p.objective.size(); ++j) {
        if (j) out << " + ";
        out << to_string(p.objective[j]) << " x" << (j + 1);
    }
    out << "\nsubject to\n";
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
        const auto& c = p.constraints[i];
        out << "  r" << (i + 1) << ":";
        for (std::size_t j = 0; j < c.coeffs.size(); ++j)
            out << " " << (j ? "+ " : "") << to_string(c.coeffs[j]) << " x" << (j + 1);
        out << (c.rel == Relation::LessEq ? " <= " : c.rel == Relation::GreaterEq ? " >= " : " = ");
        out << to_string(c.rhs) << "\n";
    }
    out << "bounds\n";
    for (std::size_t j = 0; j < p.objective.size(); ++j) {
        VariableBounds b = p.bounds.empty() ? VariableBounds{} : p.bounds[j];
        out << "  ";
        if (!b.lower && !b.upper) {
            out << "x" << (j + 1) << " free\n";
            continue;
        }
        if (b.lower) out << to_string(*b.lower) << " <= ";
        out << "x" << (j + 1);
        if (b.upper) out << " <= " << to_string(*b.upper);
        out << "\n";
    }
    return out.str();
}

} // namespace hullcert
