#include "infosel/pid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "infosel/errors.hpp"
#include "infosel/estimators.hpp"

namespace infosel {

namespace {

double xlog2x(double v) { return v > 0.0 ? v * std::log2(v) : 0.0; }

struct Pairwise {
    std::vector<double> py, px1, px2;
    std::vector<double> pyx1;  // ny * nx1
    std::vector<double> pyx2;  // ny * nx2
};

Pairwise pairwise_marginals(const TripleDistribution& p) {
    Pairwise m;
    m.py.assign(p.ny, 0.0);
    m.px1.assign(p.nx1, 0.0);
    m.px2.assign(p.nx2, 0.0);
    m.pyx1.assign(p.ny * p.nx1, 0.0);
    m.pyx2.assign(p.ny * p.nx2, 0.0);
    for (std::size_t y = 0; y < p.ny; ++y) {
        for (std::size_t a = 0; a < p.nx1; ++a) {
            for (std::size_t b = 0; b < p.nx2; ++b) {
                const double v = p.at(y, a, b);
                m.py[y] += v;
                m.px1[a] += v;
                m.px2[b] += v;
                m.pyx1[y * p.nx1 + a] += v;
                m.pyx2[y * p.nx2 + b] += v;
            }
        }
    }
    return m;
}

std::vector<double> input_marginal(const TripleDistribution& p) {
    std::vector<double> m(p.nx1 * p.nx2, 0.0);
    for (std::size_t y = 0; y < p.ny; ++y) {
        for (std::size_t a = 0; a < p.nx1; ++a) {
            for (std::size_t b = 0; b < p.nx2; ++b) m[a * p.nx2 + b] += p.at(y, a, b);
        }
    }
    return m;
}

double pairwise_mi(const std::vector<double>& joint, const std::vector<double>& ma,
                   const std::vector<double>& mb) {
    std::vector<double> terms;
    terms.reserve(joint.size());
    const std::size_t nb = mb.size();
    for (std::size_t a = 0; a < ma.size(); ++a) {
        for (std::size_t b = 0; b < nb; ++b) {
            const double j = joint[a * nb + b];
            if (j > 0.0) terms.push_back(j * std::log2(j / (ma[a] * mb[b])));
        }
    }
    return std::max(0.0, detail::neumaier_sorted_sum(terms));
}

// I(Y;X1|X2) of an arbitrary non-negative table, all marginals taken from
// the table itself.
double cond_mi_x1(const TripleDistribution& q) {
    const Pairwise m = pairwise_marginals(q);
    const std::vector<double> m12 = input_marginal(q);
    std::vector<double> terms;
    terms.reserve(q.p.size());
    for (std::size_t y = 0; y < q.ny; ++y) {
        for (std::size_t a = 0; a < q.nx1; ++a) {
            for (std::size_t b = 0; b < q.nx2; ++b) {
                const double v = q.at(y, a, b);
                if (v <= 0.0) continue;
                terms.push_back(
                    v * std::log2(v * m.px2[b] / (m12[a * q.nx2 + b] * m.pyx2[y * q.nx2 + b])));
            }
        }
    }
    return std::max(0.0, detail::neumaier_sorted_sum(terms));
}

// The solver's feasible set, slice by slice: within each y the (Y,X1) and
// (Y,X2) marginals pin the row and column sums, so q_y ranges over a
// transportation polytope on the rows/columns that carry mass.
struct Geometry {
    Pairwise marg;
    std::vector<std::vector<std::size_t>> rows;  // [y] -> x1 with p(y,x1) > 0
    std::vector<std::vector<std::size_t>> cols;  // [y] -> x2 with p(y,x2) > 0
    std::vector<std::size_t> active;             // flat cell indices
};

Geometry make_geometry(const TripleDistribution& p) {
    Geometry g;
    g.marg = pairwise_marginals(p);
    g.rows.resize(p.ny);
    g.cols.resize(p.ny);
    for (std::size_t y = 0; y < p.ny; ++y) {
        for (std::size_t a = 0; a < p.nx1; ++a) {
            if (g.marg.pyx1[y * p.nx1 + a] > 0.0) g.rows[y].push_back(a);
        }
        for (std::size_t b = 0; b < p.nx2; ++b) {
            if (g.marg.pyx2[y * p.nx2 + b] > 0.0) g.cols[y].push_back(b);
        }
        for (std::size_t a : g.rows[y]) {
            for (std::size_t b : g.cols[y]) g.active.push_back((y * p.nx1 + a) * p.nx2 + b);
        }
    }
    return g;
}

// Conditional-independence point q_ci(y,x1,x2) = p(y,x1) p(y,x2) / p(y):
// it has the required pairwise marginals and positive mass on every cell the
// polytope can reach, which makes it the interior starting point.
TripleDistribution ci_point(const TripleDistribution& p, const Geometry& geo) {
    TripleDistribution q(p.ny, p.nx1, p.nx2);
    for (std::size_t y = 0; y < p.ny; ++y) {
        if (geo.marg.py[y] <= 0.0) continue;
        for (std::size_t a : geo.rows[y]) {
            for (std::size_t b : geo.cols[y]) {
                q.at(y, a, b) = geo.marg.pyx1[y * p.nx1 + a] * geo.marg.pyx2[y * p.nx2 + b] /
                                geo.marg.py[y];
            }
        }
    }
    return q;
}

// Variable part of the objective in bits: sum q log2 q - sum m12 log2 m12.
// The terms fixed by the marginals are dropped; differences are all the
// step acceptance check needs.
double phi(const TripleDistribution& q) {
    double s = 0.0;
    for (double v : q.p) s += xlog2x(v);
    for (double v : input_marginal(q)) s -= xlog2x(v);
    return s;
}

std::vector<double> gradient(const TripleDistribution& q, const Geometry& geo) {
    const std::vector<double> m12 = input_marginal(q);
    std::vector<double> g(q.p.size(), 0.0);
    for (std::size_t cell : geo.active) {
        const std::size_t b = cell % q.nx2;
        const std::size_t a = (cell / q.nx2) % q.nx1;
        g[cell] = std::log2(q.p[cell] / m12[a * q.nx2 + b]);
    }
    return g;
}

// Certified distance to the minimum via the Lagrange dual: any multipliers
// (l1, l2) on the two pairwise-marginal constraints with
//     sum_y 2^(l1(y,x1) + l2(y,x2)) <= 1   for every input cell (x1, x2)
// bound the objective from below by sum p(y,x1) l1 + sum p(y,x2) l2.  At the
// minimizer the gradient log2(q/m12) is additively separable in (y,x1) and
// (y,x2) wherever mass sits, so a mass-weighted row/column-means fit of it
// recovers multipliers whose bound closes.  A linearized (Frank-Wolfe) gap
// cannot do this: cells still decaying toward tiny values carry gradients
// that keep promising progress the objective does not have.  Every active
// cell joins the fit with a small ridge added to its weight: on sparse
// tables the heavy cells alone can leave rows and columns connected only
// through near-empty cells, and without their vote the relative offset
// between such groups is arbitrary, which wrecks the constraint sums that
// mix them.  The fit leaves some constraints violated, so feasibility is
// restored by shifting whole rows l1(.,x1) and columns l2(.,x2) downward to
// cover every violation.  That is deliberately blunt, and the fit itself is
// blind to cells whose ratio says nothing about the optimum (a cell alone in
// its input column has q/m12 = 1 no matter what, so the descent cannot move
// it and the fit cannot read it); a final coordinate-ascent pass fixes both
// at once, pushing each multiplier up until its tightest constraint binds,
// which only ever raises the bound.
double dual_gap(const TripleDistribution& q, const Geometry& geo, double phi_q) {
    constexpr double kRidge = 1e-12;
    const std::vector<double> m12 = input_marginal(q);
    const std::size_t ny = q.ny;

    std::vector<std::vector<double>> alpha(ny), beta(ny);
    for (std::size_t y = 0; y < ny; ++y) {
        const auto& ra = geo.rows[y];
        const auto& ca = geo.cols[y];
        if (ra.empty() || ca.empty()) continue;
        std::vector<double> fit(ra.size() * ca.size(), 0.0);
        std::vector<double> w(ra.size() * ca.size(), 0.0);
        for (std::size_t i = 0; i < ra.size(); ++i) {
            for (std::size_t j = 0; j < ca.size(); ++j) {
                const double v = q.at(y, ra[i], ca[j]);
                fit[i * ca.size() + j] = std::log2(v / m12[ra[i] * q.nx2 + ca[j]]);
                w[i * ca.size() + j] = v + kRidge;
            }
        }
        std::vector<double>& al = alpha[y];
        std::vector<double>& be = beta[y];
        al.assign(ra.size(), 0.0);
        be.assign(ca.size(), 0.0);
        for (int sweep = 0; sweep < 60; ++sweep) {
            for (std::size_t i = 0; i < ra.size(); ++i) {
                double s = 0.0, wn = 0.0;
                for (std::size_t j = 0; j < ca.size(); ++j) {
                    const double ww = w[i * ca.size() + j];
                    if (ww > 0.0) { s += ww * (fit[i * ca.size() + j] - be[j]); wn += ww; }
                }
                if (wn > 0.0) al[i] = s / wn;
            }
            for (std::size_t j = 0; j < ca.size(); ++j) {
                double s = 0.0, wn = 0.0;
                for (std::size_t i = 0; i < ra.size(); ++i) {
                    const double ww = w[i * ca.size() + j];
                    if (ww > 0.0) { s += ww * (fit[i * ca.size() + j] - al[i]); wn += ww; }
                }
                if (wn > 0.0) be[j] = s / wn;
            }
        }
    }

    std::vector<double> e(q.nx1 * q.nx2, 0.0);
    {
        std::vector<double> colsum(q.nx1 * q.nx2, 0.0);
        for (std::size_t y = 0; y < ny; ++y) {
            const auto& ra = geo.rows[y];
            const auto& ca = geo.cols[y];
            for (std::size_t i = 0; i < ra.size(); ++i) {
                for (std::size_t j = 0; j < ca.size(); ++j) {
                    colsum[ra[i] * q.nx2 + ca[j]] += std::exp2(alpha[y][i] + beta[y][j]);
                }
            }
        }
        for (std::size_t c = 0; c < colsum.size(); ++c) {
            if (colsum[c] > 1.0) e[c] = std::log2(colsum[c]);
        }
    }

    // Restore feasibility: find shifts d1(x1), d2(x2) >= 0 covering every
    // violation, d1 + d2 >= e, at minimal cost in marginal mass.  Alternating
    // best responses from either side descend on that covering cost; the
    // cheaper of the two sweeps wins.
    std::vector<double> p1mass(q.nx1, 0.0), p2mass(q.nx2, 0.0);
    for (std::size_t y = 0; y < ny; ++y) {
        for (std::size_t a = 0; a < q.nx1; ++a) p1mass[a] += geo.marg.pyx1[y * q.nx1 + a];
        for (std::size_t b = 0; b < q.nx2; ++b) p2mass[b] += geo.marg.pyx2[y * q.nx2 + b];
    }
    const auto repair = [&](bool rows_first, std::vector<double>& d1, std::vector<double>& d2) {
        d1.assign(q.nx1, 0.0);
        d2.assign(q.nx2, 0.0);
        for (int round = 0; round < 4; ++round) {
            if (rows_first || round > 0) {
                for (std::size_t a = 0; a < q.nx1; ++a) {
                    double need = 0.0;
                    for (std::size_t b = 0; b < q.nx2; ++b) {
                        need = std::max(need, e[a * q.nx2 + b] - d2[b]);
                    }
                    d1[a] = need;
                }
            }
            for (std::size_t b = 0; b < q.nx2; ++b) {
                double need = 0.0;
                for (std::size_t a = 0; a < q.nx1; ++a) {
                    need = std::max(need, e[a * q.nx2 + b] - d1[a]);
                }
                d2[b] = need;
            }
        }
        for (std::size_t a = 0; a < q.nx1; ++a) {
            double need = 0.0;
            for (std::size_t b = 0; b < q.nx2; ++b) {
                need = std::max(need, e[a * q.nx2 + b] - d2[b]);
            }
            d1[a] = need;
        }
        double cost = 0.0;
        for (std::size_t a = 0; a < q.nx1; ++a) cost += p1mass[a] * d1[a];
        for (std::size_t b = 0; b < q.nx2; ++b) cost += p2mass[b] * d2[b];
        return cost;
    };
    std::vector<double> d1r, d2r, d1c, d2c;
    const double cost_r = repair(true, d1r, d2r);
    const double cost_c = repair(false, d1c, d2c);
    const std::vector<double>& d1 = cost_r <= cost_c ? d1r : d1c;
    const std::vector<double>& d2 = cost_r <= cost_c ? d2r : d2c;

    // Tighten: with feasible multipliers in hand, raise each one until the
    // tightest of its constraints binds.  Every push adds marginal mass times
    // the push to the bound and keeps every column sum at or below one, so
    // the certificate only improves; sweeps stop when the gains dry up.
    std::vector<std::vector<double>> l1(ny), l2(ny), texp(ny);
    for (std::size_t y = 0; y < ny; ++y) {
        const auto& ra = geo.rows[y];
        const auto& ca = geo.cols[y];
        l1[y].resize(ra.size());
        l2[y].resize(ca.size());
        for (std::size_t i = 0; i < ra.size(); ++i) l1[y][i] = alpha[y][i] - d1[ra[i]];
        for (std::size_t j = 0; j < ca.size(); ++j) l2[y][j] = beta[y][j] - d2[ca[j]];
        texp[y].resize(ra.size() * ca.size());
    }
    std::vector<double> colsum(q.nx1 * q.nx2, 0.0);
    for (int sweep = 0; sweep < 200; ++sweep) {
        std::fill(colsum.begin(), colsum.end(), 0.0);
        for (std::size_t y = 0; y < ny; ++y) {
            const auto& ra = geo.rows[y];
            const auto& ca = geo.cols[y];
            for (std::size_t i = 0; i < ra.size(); ++i) {
                for (std::size_t j = 0; j < ca.size(); ++j) {
                    const double t = l1[y][i] + l2[y][j];
                    texp[y][i * ca.size() + j] = t;
                    colsum[ra[i] * q.nx2 + ca[j]] += std::exp2(t);
                }
            }
        }
        double gain = 0.0;
        for (std::size_t y = 0; y < ny; ++y) {
            const auto& ra = geo.rows[y];
            const auto& ca = geo.cols[y];
            for (std::size_t i = 0; i < ra.size(); ++i) {
                double push = std::numeric_limits<double>::infinity();
                for (std::size_t j = 0; j < ca.size(); ++j) {
                    const double t = texp[y][i * ca.size() + j];
                    const double rest = std::max(0.0, colsum[ra[i] * q.nx2 + ca[j]] - std::exp2(t));
                    if (rest >= 1.0) {
                        push = 0.0;
                        break;
                    }
                    push = std::min(push, std::log2(1.0 - rest) - t);
                }
                if (!(push > 0.0) || !std::isfinite(push)) continue;
                l1[y][i] += push;
                gain += geo.marg.pyx1[y * q.nx1 + ra[i]] * push;
                for (std::size_t j = 0; j < ca.size(); ++j) {
                    const double t = texp[y][i * ca.size() + j];
                    colsum[ra[i] * q.nx2 + ca[j]] += std::exp2(t + push) - std::exp2(t);
                    texp[y][i * ca.size() + j] = t + push;
                }
            }
            for (std::size_t j = 0; j < ca.size(); ++j) {
                double push = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < ra.size(); ++i) {
                    const double t = texp[y][i * ca.size() + j];
                    const double rest = std::max(0.0, colsum[ra[i] * q.nx2 + ca[j]] - std::exp2(t));
                    if (rest >= 1.0) {
                        push = 0.0;
                        break;
                    }
                    push = std::min(push, std::log2(1.0 - rest) - t);
                }
                if (!(push > 0.0) || !std::isfinite(push)) continue;
                l2[y][j] += push;
                gain += geo.marg.pyx2[y * q.nx2 + ca[j]] * push;
                for (std::size_t i = 0; i < ra.size(); ++i) {
                    const double t = texp[y][i * ca.size() + j];
                    colsum[ra[i] * q.nx2 + ca[j]] += std::exp2(t + push) - std::exp2(t);
                    texp[y][i * ca.size() + j] = t + push;
                }
            }
        }
        if (gain < 1e-12) break;
    }

    double bound = 0.0;
    for (std::size_t y = 0; y < ny; ++y) {
        const auto& ra = geo.rows[y];
        const auto& ca = geo.cols[y];
        for (std::size_t i = 0; i < ra.size(); ++i) {
            bound += geo.marg.pyx1[y * q.nx1 + ra[i]] * l1[y][i];
        }
        for (std::size_t j = 0; j < ca.size(); ++j) {
            bound += geo.marg.pyx2[y * q.nx2 + ca[j]] * l2[y][j];
        }
    }
    return std::max(0.0, phi_q - bound);
}

// Pulls a positive table back onto the pairwise marginals with iterative
// proportional fitting, slice by slice.  Sweeps continue until the row sums
// match to near machine precision; the descent loop compares objective values
// a dozen digits apart, so the projection has to be exact at that scale or
// its noise masquerades as failed progress.  A closing row pass then makes
// the row sums exact while the column sums keep the converged residual.
void ipf_project(TripleDistribution& q, const Geometry& geo) {
    const auto scale_rows = [&](std::size_t y, const std::vector<std::size_t>& ra,
                                const std::vector<std::size_t>& ca) {
        for (std::size_t a : ra) {
            double s = 0.0;
            for (std::size_t b : ca) s += q.at(y, a, b);
            if (s <= 0.0) continue;
            const double f = geo.marg.pyx1[y * q.nx1 + a] / s;
            for (std::size_t b : ca) q.at(y, a, b) *= f;
        }
    };
    for (std::size_t y = 0; y < q.ny; ++y) {
        const auto& ra = geo.rows[y];
        const auto& ca = geo.cols[y];
        if (ra.empty() || ca.empty()) continue;
        for (int sweep = 0; sweep < 4000; ++sweep) {
            scale_rows(y, ra, ca);
            for (std::size_t b : ca) {
                double s = 0.0;
                for (std::size_t a : ra) s += q.at(y, a, b);
                if (s <= 0.0) continue;
                const double f = geo.marg.pyx2[y * q.nx2 + b] / s;
                for (std::size_t a : ra) q.at(y, a, b) *= f;
            }
            double drift = 0.0;
            for (std::size_t a : ra) {
                double s = 0.0;
                for (std::size_t b : ca) s += q.at(y, a, b);
                drift = std::max(drift, std::abs(s - geo.marg.pyx1[y * q.nx1 + a]));
            }
            if (drift <= 1e-15) break;
        }
        scale_rows(y, ra, ca);
    }
}

}  // namespace

void TripleDistribution::validate() const {
    if (ny == 0 || nx1 == 0 || nx2 == 0 || p.size() != ny * nx1 * nx2) {
        throw ConfigError("TripleDistribution: empty or inconsistent shape");
    }
    double total = 0.0;
    for (double v : p) {
        if (v < 0.0) throw ConfigError("TripleDistribution: negative probability");
        total += v;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ConfigError("TripleDistribution: probabilities sum to " + std::to_string(total));
    }
}

TripleInformation triple_information(const TripleDistribution& p) {
    p.validate();
    const Pairwise m = pairwise_marginals(p);
    const std::vector<double> m12 = input_marginal(p);

    TripleInformation info;
    info.mi_x1 = pairwise_mi(m.pyx1, m.py, m.px1);
    info.mi_x2 = pairwise_mi(m.pyx2, m.py, m.px2);

    std::vector<double> terms;
    terms.reserve(p.p.size());
    for (std::size_t y = 0; y < p.ny; ++y) {
        for (std::size_t a = 0; a < p.nx1; ++a) {
            for (std::size_t b = 0; b < p.nx2; ++b) {
                const double v = p.at(y, a, b);
                if (v > 0.0) {
                    terms.push_back(v * std::log2(v / (m.py[y] * m12[a * p.nx2 + b])));
                }
            }
        }
    }
    info.mi_joint = std::max(0.0, detail::neumaier_sorted_sum(terms));
    info.cmi_x1_x2 = cond_mi_x1(p);

    terms.clear();
    for (std::size_t y = 0; y < p.ny; ++y) {
        for (std::size_t a = 0; a < p.nx1; ++a) {
            for (std::size_t b = 0; b < p.nx2; ++b) {
                const double v = p.at(y, a, b);
                if (v <= 0.0) continue;
                terms.push_back(
                    v * std::log2(v * m.px1[a] / (m12[a * p.nx2 + b] * m.pyx1[y * p.nx1 + a])));
            }
        }
    }
    info.cmi_x2_x1 = std::max(0.0, detail::neumaier_sorted_sum(terms));
    return info;
}

TripleDistribution empirical_triple(const std::vector<int>& y, const std::vector<int>& x1,
                                    const std::vector<int>& x2) {
    return empirical_triple(y, x1, std::vector<std::vector<int>>{x2});
}

TripleDistribution empirical_triple(const std::vector<int>& y, const std::vector<int>& x1,
                                    const std::vector<std::vector<int>>& x2_columns) {
    if (y.empty()) throw DataError("empirical_triple: empty input");
    if (x1.size() != y.size()) throw DataError("empirical_triple: length mismatch (x1)");
    if (x2_columns.empty()) throw DataError("empirical_triple: x2 needs at least one column");
    std::vector<const std::vector<int>*> x2p;
    for (const auto& col : x2_columns) {
        if (col.size() != y.size()) throw DataError("empirical_triple: length mismatch (x2)");
        x2p.push_back(&col);
    }
    const auto [x2, na2] = detail::product_codes(x2p);

    int ymax = 0, x1max = 0;
    for (std::size_t r = 0; r < y.size(); ++r) {
        if (y[r] < 0 || x1[r] < 0) throw DataError("empirical_triple: negative code");
        ymax = std::max(ymax, y[r]);
        x1max = std::max(x1max, x1[r]);
    }

    TripleDistribution p(static_cast<std::size_t>(ymax) + 1, static_cast<std::size_t>(x1max) + 1,
                         na2);
    const double w = 1.0 / static_cast<double>(y.size());
    for (std::size_t r = 0; r < y.size(); ++r) {
        p.at(static_cast<std::size_t>(y[r]), static_cast<std::size_t>(x1[r]),
             static_cast<std::size_t>(x2[r])) += w;
    }
    return p;
}

// Interior multiplicative updates: scale each active cell by
// 2^(-eta (g - gauge)) and pull the scaled table back onto the marginals
// with IPF sweeps.  The minimizer puts positive (if sometimes tiny) mass on
// every cell whose row and column both carry mass, because the objective
// falls off with infinite slope when a reachable cell empties; multiplicative
// steps keep all of those cells positive and reach such points directly,
// where additive steps grind to a halt against the boundary.
BrojaResult broja_unique(const TripleDistribution& p, double tol) {
    p.validate();
    if (!(tol > 0.0)) throw ConfigError("broja_unique: tol must be positive");

    const Geometry geo = make_geometry(p);
    TripleDistribution q = ci_point(p, geo);
    TripleDistribution trial = q;
    TripleDistribution best_q = q;
    double best_phi = phi(q);

    constexpr std::size_t kMaxIter = 100000;
    constexpr double kCellFloor = 1e-280;
    double gap = std::numeric_limits<double>::infinity();
    double eta = 0.5;
    std::size_t iters = kMaxIter;

    for (std::size_t iter = 1; iter <= kMaxIter; ++iter) {
        const double phi0 = phi(q);
        if (phi0 < best_phi) {
            best_phi = phi0;
            best_q = q;
        }

        if (iter % 25 == 1) {
            gap = dual_gap(q, geo, phi0);
            if (gap < tol) {
                const double unq = cond_mi_x1(q);
                return {std::move(q), unq, gap, iter};
            }
        }

        const std::vector<double> g = gradient(q, geo);
        // The gauge term recenters the exponents; any per-table constant is
        // absorbed by the projection, and without it large steps overflow.
        double gauge = 0.0;
        for (std::size_t cell : geo.active) gauge += g[cell];
        gauge /= static_cast<double>(geo.active.size());

        bool moved = false;
        while (eta > 1e-14) {
            for (std::size_t cell : geo.active) {
                const double expo = std::clamp(-eta * (g[cell] - gauge), -60.0, 60.0);
                trial.p[cell] = std::max(q.p[cell] * std::exp2(expo), kCellFloor);
            }
            ipf_project(trial, geo);
            if (phi(trial) < phi0 - 1e-13) {
                std::swap(q.p, trial.p);
                eta = std::min(eta * 1.3, 8.0);
                moved = true;
                break;
            }
            eta *= 0.5;
        }
        if (!moved) {
            // No step length makes progress, so the iterate is stationary;
            // all that is left is to certify it.
            iters = iter;
            break;
        }
    }

    const double final_gap = dual_gap(best_q, geo, best_phi);
    if (final_gap < tol) {
        const double unq = cond_mi_x1(best_q);
        return {std::move(best_q), unq, final_gap, iters};
    }
    throw SolverError("broja_unique: no certificate after " + std::to_string(iters) +
                          " iterations (gap " + std::to_string(final_gap) + " bits)",
                      best_q, final_gap);
}

PidAtoms pid_decompose(const TripleDistribution& p, double tol) {
    const TripleInformation info = triple_information(p);

    // The identities pin every other atom once unq_x1 is known; confining
    // unq_x1 to the interval they allow absorbs the solver tolerance and
    // keeps all four atoms non-negative.
    const double lo = std::max(0.0, info.mi_x1 - info.mi_x2);
    const double hi = std::min(info.mi_x1, info.cmi_x1_x2);

    double unq1;
    try {
        unq1 = broja_unique(p, tol).unq_x1;
    } catch (const SolverError& e) {
        // A stalled solve still brackets the optimum: the final iterate is an
        // upper bound and iterate minus gap a lower one.  Degenerate inputs
        // (one source a copy of the other, say) often stall with the answer
        // already pinned by the identity interval; accept when the combined
        // bracket is tighter than tol, otherwise the failure is real.
        const double at_best = triple_information(e.best_iterate()).cmi_x1_x2;
        const double cert_lo = std::max(lo, at_best - e.gap());
        const double cert_hi = std::min(hi, at_best);
        if (cert_hi - cert_lo > tol) throw;
        unq1 = 0.5 * (cert_lo + cert_hi);
    }
    unq1 = lo <= hi ? std::clamp(unq1, lo, hi) : 0.5 * (lo + hi);

    PidAtoms atoms;
    atoms.unq_x1 = unq1;
    atoms.shd = info.mi_x1 - unq1;
    atoms.unq_x2 = info.mi_x2 - atoms.shd;
    atoms.syn = info.cmi_x1_x2 - unq1;
    return atoms;
}

double brute_force_unique(const TripleDistribution& p, double grid_step) {
    p.validate();
    if (!(grid_step > 0.0 && grid_step <= 1.0)) {
        throw ConfigError("brute_force_unique: grid_step must lie in (0, 1]");
    }
    const Geometry geo = make_geometry(p);

    // One double-difference direction per (row, col) pair beyond the first,
    // per slice; together they span the feasible perturbations.
    struct Direction {
        std::size_t plus_a, plus_b;    // +delta at (y, a, b) and (y, a0, b0)
        std::size_t minus_a, minus_b;  // -delta at (y, a, b0) and (y, a0, b)
    };
    std::vector<Direction> dirs;
    for (std::size_t y = 0; y < p.ny; ++y) {
        const auto& ra = geo.rows[y];
        const auto& ca = geo.cols[y];
        for (std::size_t i = 1; i < ra.size(); ++i) {
            for (std::size_t j = 1; j < ca.size(); ++j) {
                const auto flat = [&](std::size_t a, std::size_t b) {
                    return (y * p.nx1 + a) * p.nx2 + b;
                };
                dirs.push_back({flat(ra[i], ca[j]), flat(ra[0], ca[0]), flat(ra[i], ca[0]),
                                flat(ra[0], ca[j])});
            }
        }
    }

    const std::size_t per_dim = static_cast<std::size_t>(std::floor(2.0 / grid_step)) + 1;
    double budget = 1.0;
    for (std::size_t k = 0; k < dirs.size(); ++k) {
        budget *= static_cast<double>(per_dim);
        if (budget > 1e8) {
            throw BudgetError("brute_force_unique: " + std::to_string(dirs.size()) +
                              " grid dimensions exceed the evaluation budget");
        }
    }

    const Pairwise marg = pairwise_marginals(p);
    TripleDistribution q = p;
    std::vector<double> m12(p.nx1 * p.nx2);
    std::vector<std::size_t> odo(dirs.size(), 0);
    double best = std::numeric_limits<double>::infinity();

    while (true) {
        q.p = p.p;
        for (std::size_t k = 0; k < dirs.size(); ++k) {
            const double t = -1.0 + static_cast<double>(odo[k]) * grid_step;
            if (t == 0.0) continue;
            q.p[dirs[k].plus_a] += t;
            q.p[dirs[k].plus_b] += t;
            q.p[dirs[k].minus_a] -= t;
            q.p[dirs[k].minus_b] -= t;
        }
        bool feasible = true;
        for (std::size_t cell : geo.active) {
            if (q.p[cell] < -1e-12) {
                feasible = false;
                break;
            }
            if (q.p[cell] < 0.0) q.p[cell] = 0.0;
        }

        if (feasible) {
            std::fill(m12.begin(), m12.end(), 0.0);
            for (std::size_t y = 0; y < p.ny; ++y) {
                for (std::size_t a = 0; a < p.nx1; ++a) {
                    for (std::size_t b = 0; b < p.nx2; ++b) {
                        m12[a * p.nx2 + b] += q.at(y, a, b);
                    }
                }
            }
            double value = 0.0;
            for (std::size_t y = 0; y < p.ny; ++y) {
                for (std::size_t a = 0; a < p.nx1; ++a) {
                    for (std::size_t b = 0; b < p.nx2; ++b) {
                        const double v = q.at(y, a, b);
                        if (v <= 0.0) continue;
                        value += v * std::log2(v * marg.px2[b] /
                                               (m12[a * p.nx2 + b] * marg.pyx2[y * p.nx2 + b]));
                    }
                }
            }
            best = std::min(best, value);
        }

        std::size_t k = 0;
        while (k < dirs.size() && ++odo[k] == per_dim) {
            odo[k] = 0;
            ++k;
        }
        if (k == dirs.size()) break;
    }
    return std::max(0.0, best);
}

}  // namespace infosel
