#include "infosel/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <string>

#include "infosel/errors.hpp"

namespace infosel {

namespace detail {

// Sorting first makes the result a function of the term multiset alone, so
// algebraically identical estimates (transposed tables, reordered cells) sum
// to bit-identical values.
double neumaier_sorted_sum(std::vector<double>& terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    double c = 0.0;
    for (double t : terms) {
        const double u = s + t;
        if (std::abs(s) >= std::abs(t)) {
            c += (s - u) + t;
        } else {
            c += (t - u) + s;
        }
        s = u;
    }
    return s + c;
}

}  // namespace detail

namespace {

std::size_t dense_alphabet(const std::vector<int>& column, const char* what) {
    if (column.empty()) throw ConfigError(std::string(what) + ": empty column");
    int hi = 0;
    for (int c : column) {
        if (c < 0) throw ConfigError(std::string(what) + ": negative discrete code");
        hi = std::max(hi, c);
    }
    return static_cast<std::size_t>(hi) + 1;
}

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw ConfigError(std::string(what) + ": column lengths differ (" + std::to_string(a) +
                          " vs " + std::to_string(b) + ")");
    }
}

}  // namespace

JointCounts JointCounts::from_columns(const std::vector<const std::vector<int>*>& columns,
                                      const std::vector<std::size_t>& alphabets) {
    if (columns.empty() || columns.size() != alphabets.size()) {
        throw ConfigError("JointCounts: need one alphabet size per column");
    }
    const std::size_t n = columns.front()->size();
    std::size_t cells = 1;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        require_same_length(columns[c]->size(), n, "JointCounts");
        if (alphabets[c] == 0) throw ConfigError("JointCounts: zero alphabet size");
        cells *= alphabets[c];
    }
    if (cells > (std::size_t(1) << 28)) throw BudgetError("JointCounts: table too large");

    JointCounts jc;
    jc.dims = alphabets;
    jc.counts.assign(cells, 0);
    jc.total = static_cast<std::int64_t>(n);
    for (std::size_t row = 0; row < n; ++row) {
        std::size_t flat = 0;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const int code = (*columns[c])[row];
            if (code < 0 || static_cast<std::size_t>(code) >= alphabets[c]) {
                throw ConfigError("JointCounts: code out of range at row " + std::to_string(row));
            }
            flat = flat * alphabets[c] + static_cast<std::size_t>(code);
        }
        ++jc.counts[flat];
    }
    return jc;
}

std::int64_t& JointCounts::at(const std::vector<std::size_t>& idx) {
    if (idx.size() != dims.size()) throw ConfigError("JointCounts::at: wrong index arity");
    std::size_t flat = 0;
    for (std::size_t c = 0; c < dims.size(); ++c) {
        if (idx[c] >= dims[c]) throw ConfigError("JointCounts::at: index out of range");
        flat = flat * dims[c] + idx[c];
    }
    return counts[flat];
}

double digamma(double x) {
    if (!(x > 0.0)) throw ConfigError("digamma: argument must be positive");
    double value = 0.0;
    while (x < 6.0) {
        value -= 1.0 / x;
        x += 1.0;
    }
    // Asymptotic expansion, accurate to ~1e-13 once shifted beyond 6.
    const double f = 1.0 / (x * x);
    value += std::log(x) - 0.5 / x -
             f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132))));
    return value;
}

double entropy_plugin(const std::vector<int>& x) {
    const std::size_t a = dense_alphabet(x, "entropy_plugin");
    const JointCounts jc = JointCounts::from_columns({&x}, {a});
    const double n = static_cast<double>(jc.total);
    std::vector<double> terms;
    terms.reserve(a);
    for (std::int64_t c : jc.counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        terms.push_back(-p * std::log2(p));
    }
    const double h = detail::neumaier_sorted_sum(terms);
    return std::clamp(h, 0.0, std::log2(static_cast<double>(a)));
}

namespace detail {

std::pair<std::vector<int>, std::size_t> product_codes(
    const std::vector<const std::vector<int>*>& columns) {
    if (columns.empty()) return {{}, 1};
    const std::size_t n = columns.front()->size();
    for (const auto* col : columns) require_same_length(col->size(), n, "product_codes");

    std::map<std::vector<int>, int> ids;
    std::vector<int> codes(n);
    std::vector<int> key(columns.size());
    for (std::size_t row = 0; row < n; ++row) {
        for (std::size_t c = 0; c < columns.size(); ++c) key[c] = (*columns[c])[row];
        const auto [it, inserted] = ids.try_emplace(key, static_cast<int>(ids.size()));
        (void)inserted;
        codes[row] = it->second;
    }
    return {std::move(codes), ids.size()};
}

double cmi_plugin_coded(const std::vector<int>& x, std::size_t xa, const std::vector<int>& y,
                        std::size_t ya, const std::vector<int>& zid, std::size_t za) {
    const std::size_t n = x.size();
    require_same_length(y.size(), n, "cmi_plugin");
    if (n == 0) throw ConfigError("cmi_plugin: empty column");
    const bool flat_z = za == 1;
    if (!flat_z) require_same_length(zid.size(), n, "cmi_plugin");

    const std::size_t cells = xa * ya * za;
    if (xa == 0 || ya == 0 || cells / (xa * ya) != za || cells > (std::size_t(1) << 28)) {
        throw BudgetError("cmi_plugin: joint table too large");
    }

    std::vector<std::int64_t> nxyz(cells, 0);
    std::vector<std::int64_t> nxz(xa * za, 0);
    std::vector<std::int64_t> nyz(ya * za, 0);
    std::vector<std::int64_t> nz(za, 0);
    for (std::size_t row = 0; row < n; ++row) {
        const auto xv = static_cast<std::size_t>(x[row]);
        const auto yv = static_cast<std::size_t>(y[row]);
        const auto zv = flat_z ? 0 : static_cast<std::size_t>(zid[row]);
        ++nxyz[(xv * ya + yv) * za + zv];
        ++nxz[xv * za + zv];
        ++nyz[yv * za + zv];
        ++nz[zv];
    }

    std::vector<double> terms;
    terms.reserve(std::min(cells, n));
    const double dn = static_cast<double>(n);
    for (std::size_t xv = 0; xv < xa; ++xv) {
        for (std::size_t yv = 0; yv < ya; ++yv) {
            for (std::size_t zv = 0; zv < za; ++zv) {
                const std::int64_t c = nxyz[(xv * ya + yv) * za + zv];
                if (c == 0) continue;
                // Counts never exceed 2^26.5, so these products are exact
                // in double and the ratio of exact values is deterministic.
                const double num = static_cast<double>(c) * static_cast<double>(nz[zv]);
                const double den = static_cast<double>(nxz[xv * za + zv]) *
                                   static_cast<double>(nyz[yv * za + zv]);
                terms.push_back(static_cast<double>(c) / dn * std::log2(num / den));
            }
        }
    }
    return std::max(0.0, detail::neumaier_sorted_sum(terms));
}

}  // namespace detail

double mi_plugin(const std::vector<int>& x, const std::vector<int>& y) {
    const std::size_t xa = dense_alphabet(x, "mi_plugin");
    const std::size_t ya = dense_alphabet(y, "mi_plugin");
    require_same_length(y.size(), x.size(), "mi_plugin");
    return detail::cmi_plugin_coded(x, xa, y, ya, {}, 1);
}

double cmi_plugin(const std::vector<int>& x, const std::vector<int>& y,
                  const std::vector<std::vector<int>>& z) {
    const std::size_t xa = dense_alphabet(x, "cmi_plugin");
    const std::size_t ya = dense_alphabet(y, "cmi_plugin");
    require_same_length(y.size(), x.size(), "cmi_plugin");
    std::vector<const std::vector<int>*> zp;
    zp.reserve(z.size());
    for (const auto& col : z) {
        dense_alphabet(col, "cmi_plugin");
        require_same_length(col.size(), x.size(), "cmi_plugin");
        zp.push_back(&col);
    }
    const auto [zid, za] = detail::product_codes(zp);
    return detail::cmi_plugin_coded(x, xa, y, ya, zid, za);
}

namespace detail {

std::vector<double> add_subnoise(const std::vector<double>& column, Seed noise_seed,
                                 std::uint64_t column_key) {
    const auto [lo, hi] = std::minmax_element(column.begin(), column.end());
    double amp = 1e-10 * (*hi - *lo);
    if (!(amp > 0.0)) amp = 1e-10;
    Rng rng = Rng(noise_seed).stream(streams::kSubnoise, column_key);
    std::vector<double> out(column.size());
    for (std::size_t i = 0; i < column.size(); ++i) out[i] = column[i] + amp * rng.next_unit();
    return out;
}

}  // namespace detail

namespace {

struct KsgInputs {
    std::vector<std::vector<double>> x, y, z;
    std::size_t n = 0;
};

KsgInputs prepare_ksg(const Columns& x, const Columns& y, const Columns& z,
                      const KnnConfig& cfg) {
    if (x.empty() || y.empty()) throw ConfigError("knn estimator: x and y need >= 1 column");
    KsgInputs in;
    in.n = x.front().size();
    if (in.n < 2) throw ConfigError("knn estimator: need at least 2 samples");
    if (cfg.k < 1 || static_cast<std::size_t>(cfg.k) >= in.n) {
        throw ConfigError("knn estimator: k must satisfy 1 <= k <= n-1");
    }
    std::uint64_t key = 0;
    for (const auto* group : {&x, &y, &z}) {
        for (const auto& col : *group) {
            require_same_length(col.size(), in.n, "knn estimator");
            auto noisy = detail::add_subnoise(col, cfg.noise_seed, key++);
            if (group == &x) in.x.push_back(std::move(noisy));
            if (group == &y) in.y.push_back(std::move(noisy));
            if (group == &z) in.z.push_back(std::move(noisy));
        }
    }
    return in;
}

void fill_maxdist(std::vector<double>& buf, const std::vector<std::vector<double>>& cols,
                  std::size_t i) {
    const std::size_t n = buf.size();
    const std::vector<double>& c0 = cols.front();
    const double v0 = c0[i];
    for (std::size_t j = 0; j < n; ++j) buf[j] = std::abs(v0 - c0[j]);
    for (std::size_t c = 1; c < cols.size(); ++c) {
        const std::vector<double>& cc = cols[c];
        const double v = cc[i];
        for (std::size_t j = 0; j < n; ++j) buf[j] = std::max(buf[j], std::abs(v - cc[j]));
    }
}

// Kraskov's first estimator on pre-noised coordinates.  eps is the max-norm
// distance of the k-th nearest neighbor in the joint space; marginal counts
// use strictly smaller distances and exclude the point itself.
double ksg_estimate(const KsgInputs& in, int k) {
    const std::size_t n = in.n;
    const bool cond = !in.z.empty();
    std::vector<double> bdx(n), bdy(n), bdz(n, 0.0);
    std::vector<double> thr(static_cast<std::size_t>(k));
    std::vector<double> psi(n + 2);
    for (std::size_t m = 1; m < psi.size(); ++m) psi[m] = digamma(static_cast<double>(m));

    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        fill_maxdist(bdx, in.x, i);
        fill_maxdist(bdy, in.y, i);
        if (cond) fill_maxdist(bdz, in.z, i);

        std::fill(thr.begin(), thr.end(), std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            const double d = std::max(std::max(bdx[j], bdy[j]), bdz[j]);
            if (d < thr.back()) {
                std::size_t p = thr.size() - 1;
                while (p > 0 && thr[p - 1] > d) {
                    thr[p] = thr[p - 1];
                    --p;
                }
                thr[p] = d;
            }
        }
        const double eps = thr.back();
        const std::size_t self = eps > 0.0 ? 1 : 0;

        if (cond) {
            std::size_t cxz = 0, cyz = 0, cz = 0;
            for (std::size_t j = 0; j < n; ++j) {
                cxz += std::max(bdx[j], bdz[j]) < eps;
                cyz += std::max(bdy[j], bdz[j]) < eps;
                cz += bdz[j] < eps;
            }
            sum += psi[cxz - self + 1] + psi[cyz - self + 1] - psi[cz - self + 1];
        } else {
            std::size_t cx = 0, cy = 0;
            for (std::size_t j = 0; j < n; ++j) {
                cx += bdx[j] < eps;
                cy += bdy[j] < eps;
            }
            sum += psi[cx - self + 1] + psi[cy - self + 1];
        }
    }

    const double dk = digamma(static_cast<double>(k));
    if (cond) return dk - sum / static_cast<double>(n);
    return dk + digamma(static_cast<double>(n)) - sum / static_cast<double>(n);
}

}  // namespace

double mi_knn(const Columns& x, const Columns& y, const KnnConfig& cfg) {
    return ksg_estimate(prepare_ksg(x, y, {}, cfg), cfg.k);
}

double cmi_knn(const Columns& x, const Columns& y, const Columns& z, const KnnConfig& cfg) {
    if (z.empty()) return mi_knn(x, y, cfg);
    return ksg_estimate(prepare_ksg(x, y, z, cfg), cfg.k);
}

double mi_knn(const std::vector<double>& x, const std::vector<double>& y, const KnnConfig& cfg) {
    return mi_knn(Columns{x}, Columns{y}, cfg);
}

double cmi_knn(const std::vector<double>& x, const std::vector<double>& y,
               const std::vector<double>& z, const KnnConfig& cfg) {
    return cmi_knn(Columns{x}, Columns{y}, Columns{z}, cfg);
}

}  // namespace infosel
