#include "infosel/detail/score_workspace.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "infosel/errors.hpp"

namespace infosel::detail {

namespace {

// Above this size the four n*n distance matrices stop paying for themselves
// in memory, so scoring falls back to recomputing conditioning distances.
constexpr std::size_t kMatrixCap = 2048;

inline void kth_insert(std::vector<double>& thr, double d) {
    if (d < thr.back()) {
        std::size_t p = thr.size() - 1;
        while (p > 0 && thr[p - 1] > d) {
            thr[p] = thr[p - 1];
            --p;
        }
        thr[p] = d;
    }
}

inline std::size_t count_below(const double* row, std::size_t n, double eps) {
    return static_cast<std::size_t>(std::lower_bound(row, row + n, eps) - row);
}

template <typename T>
void ensure_zeroed(std::vector<T>& v, std::size_t size) {
    if (v.size() < size) v.assign(size, T(0));
}

}  // namespace

KsgScoreWorkspace::KsgScoreWorkspace(const std::vector<double>* y, int k)
    : y_(y), n_(y->size()), k_(k) {
    if (n_ < 2) throw ConfigError("knn workspace: need at least 2 samples");
    if (k_ < 1 || static_cast<std::size_t>(k_) >= n_) {
        throw ConfigError("knn workspace: k must satisfy 1 <= k <= n-1");
    }
    psi_.resize(n_ + 2, 0.0);
    for (std::size_t m = 1; m < psi_.size(); ++m) psi_[m] = digamma(static_cast<double>(m));
}

void KsgScoreWorkspace::set_conditioning(std::vector<const std::vector<double>*> z) {
    for (const auto* col : z) {
        if (col->size() != n_) throw ConfigError("knn workspace: conditioning length mismatch");
    }
    z_ = std::move(z);
    matrix_mode_ = !z_.empty() && n_ <= kMatrixCap;
    if (!matrix_mode_) {
        std::vector<double>().swap(dz_);
        std::vector<double>().swap(dyz_);
        std::vector<double>().swap(dz_sorted_);
        std::vector<double>().swap(dyz_sorted_);
        return;
    }

    dz_.assign(n_ * n_, 0.0);
    dyz_.assign(n_ * n_, 0.0);
    const std::vector<double>& y = *y_;
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i + 1; j < n_; ++j) {
            double dz = 0.0;
            for (const auto* col : z_) dz = std::max(dz, std::abs((*col)[i] - (*col)[j]));
            const double dyz = std::max(dz, std::abs(y[i] - y[j]));
            dz_[i * n_ + j] = dz_[j * n_ + i] = dz;
            dyz_[i * n_ + j] = dyz_[j * n_ + i] = dyz;
        }
    }
    dz_sorted_ = dz_;
    dyz_sorted_ = dyz_;
    for (std::size_t i = 0; i < n_; ++i) {
        std::sort(dz_sorted_.begin() + i * n_, dz_sorted_.begin() + (i + 1) * n_);
        std::sort(dyz_sorted_.begin() + i * n_, dyz_sorted_.begin() + (i + 1) * n_);
    }
}

double KsgScoreWorkspace::score(const std::vector<double>& x, Scratch& s) const {
    if (x.size() != n_) throw ConfigError("knn workspace: candidate length mismatch");
    if (z_.empty()) return score_direct(x, s);
    return matrix_mode_ ? score_matrix(x, s) : score_oversize(x, s);
}

double KsgScoreWorkspace::score_direct(const std::vector<double>& x, Scratch& s) const {
    const std::vector<double>& y = *y_;
    s.dx.resize(n_);
    s.dy.resize(n_);
    s.kth.resize(static_cast<std::size_t>(k_));

    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        for (std::size_t j = 0; j < n_; ++j) {
            s.dx[j] = std::abs(xi - x[j]);
            s.dy[j] = std::abs(yi - y[j]);
        }
        std::fill(s.kth.begin(), s.kth.end(), std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == i) continue;
            kth_insert(s.kth, std::max(s.dx[j], s.dy[j]));
        }
        const double eps = s.kth.back();
        const std::size_t self = eps > 0.0 ? 1 : 0;
        std::size_t cx = 0, cy = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            cx += s.dx[j] < eps;
            cy += s.dy[j] < eps;
        }
        sum += psi_[cx - self + 1] + psi_[cy - self + 1];
    }
    return psi_[static_cast<std::size_t>(k_)] + psi_[n_] - sum / static_cast<double>(n_);
}

double KsgScoreWorkspace::score_matrix(const std::vector<double>& x, Scratch& s) const {
    s.dx.resize(n_);
    s.kth.resize(static_cast<std::size_t>(k_));

    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double xi = x[i];
        const double* dzr = dz_.data() + i * n_;
        const double* dyzr = dyz_.data() + i * n_;
        for (std::size_t j = 0; j < n_; ++j) s.dx[j] = std::abs(xi - x[j]);

        std::fill(s.kth.begin(), s.kth.end(), std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == i) continue;
            kth_insert(s.kth, std::max(s.dx[j], dyzr[j]));
        }
        const double eps = s.kth.back();
        const std::size_t self = eps > 0.0 ? 1 : 0;
        std::size_t cxz = 0;
        for (std::size_t j = 0; j < n_; ++j) cxz += std::max(s.dx[j], dzr[j]) < eps;
        const std::size_t cyz = count_below(dyz_sorted_.data() + i * n_, n_, eps);
        const std::size_t cz = count_below(dz_sorted_.data() + i * n_, n_, eps);
        sum += psi_[cxz - self + 1] + psi_[cyz - self + 1] - psi_[cz - self + 1];
    }
    return psi_[static_cast<std::size_t>(k_)] - sum / static_cast<double>(n_);
}

double KsgScoreWorkspace::score_oversize(const std::vector<double>& x, Scratch& s) const {
    const std::vector<double>& y = *y_;
    s.dx.resize(n_);
    s.dz.resize(n_);
    s.dyz.resize(n_);
    s.kth.resize(static_cast<std::size_t>(k_));

    double sum = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        const std::vector<double>& z0 = *z_.front();
        const double z0i = z0[i];
        for (std::size_t j = 0; j < n_; ++j) s.dz[j] = std::abs(z0i - z0[j]);
        for (std::size_t c = 1; c < z_.size(); ++c) {
            const std::vector<double>& zc = *z_[c];
            const double zci = zc[i];
            for (std::size_t j = 0; j < n_; ++j) {
                s.dz[j] = std::max(s.dz[j], std::abs(zci - zc[j]));
            }
        }
        for (std::size_t j = 0; j < n_; ++j) {
            s.dx[j] = std::abs(xi - x[j]);
            s.dyz[j] = std::max(s.dz[j], std::abs(yi - y[j]));
        }

        std::fill(s.kth.begin(), s.kth.end(), std::numeric_limits<double>::infinity());
        for (std::size_t j = 0; j < n_; ++j) {
            if (j == i) continue;
            kth_insert(s.kth, std::max(s.dx[j], s.dyz[j]));
        }
        const double eps = s.kth.back();
        const std::size_t self = eps > 0.0 ? 1 : 0;
        std::size_t cxz = 0, cyz = 0, cz = 0;
        for (std::size_t j = 0; j < n_; ++j) {
            cxz += std::max(s.dx[j], s.dz[j]) < eps;
            cyz += s.dyz[j] < eps;
            cz += s.dz[j] < eps;
        }
        sum += psi_[cxz - self + 1] + psi_[cyz - self + 1] - psi_[cz - self + 1];
    }
    return psi_[static_cast<std::size_t>(k_)] - sum / static_cast<double>(n_);
}

PluginScoreWorkspace::PluginScoreWorkspace(const std::vector<int>* y, std::size_t y_alphabet)
    : y_(y), ya_(y_alphabet) {
    if (y_->empty()) throw ConfigError("plug-in workspace: empty target");
    if (ya_ == 0) throw ConfigError("plug-in workspace: zero target alphabet");
}

void PluginScoreWorkspace::set_conditioning(const std::vector<const std::vector<int>*>& z) {
    for (const auto* col : z) {
        if (col->size() != y_->size()) {
            throw ConfigError("plug-in workspace: conditioning length mismatch");
        }
    }
    auto [zid, za] = product_codes(z);
    zid_ = std::move(zid);
    za_ = za;
}

double PluginScoreWorkspace::score(const std::vector<int>& x, std::size_t x_alphabet,
                                   Scratch& s) const {
    const std::size_t n = y_->size();
    if (x.size() != n) throw ConfigError("plug-in workspace: candidate length mismatch");
    const std::size_t xa = x_alphabet;
    const std::size_t cells = xa * ya_ * za_;
    if (xa == 0 || cells / (xa * ya_) != za_ || cells > (std::size_t(1) << 28)) {
        throw BudgetError("plug-in workspace: joint table too large");
    }
    ensure_zeroed(s.nxyz, cells);
    ensure_zeroed(s.nxz, xa * za_);
    ensure_zeroed(s.nyz, ya_ * za_);
    ensure_zeroed(s.nz, za_);

    const std::vector<int>& y = *y_;
    for (std::size_t row = 0; row < n; ++row) {
        const auto xv = static_cast<std::size_t>(x[row]);
        const auto yv = static_cast<std::size_t>(y[row]);
        const std::size_t zv = za_ == 1 ? 0 : static_cast<std::size_t>(zid_[row]);
        assert(xv < xa && yv < ya_);
        const std::size_t i3 = (xv * ya_ + yv) * za_ + zv;
        const std::size_t ixz = xv * za_ + zv;
        const std::size_t iyz = yv * za_ + zv;
        if (s.nxyz[i3]++ == 0) s.txyz.push_back(i3);
        if (s.nxz[ixz]++ == 0) s.txz.push_back(ixz);
        if (s.nyz[iyz]++ == 0) s.tyz.push_back(iyz);
        if (s.nz[zv]++ == 0) s.tz.push_back(zv);
    }

    s.terms.clear();
    const double dn = static_cast<double>(n);
    for (const std::size_t i3 : s.txyz) {
        const std::size_t zv = i3 % za_;
        const std::size_t rest = i3 / za_;
        const std::size_t yv = rest % ya_;
        const std::size_t xv = rest / ya_;
        const double c = static_cast<double>(s.nxyz[i3]);
        const double num = c * static_cast<double>(s.nz[zv]);
        const double den = static_cast<double>(s.nxz[xv * za_ + zv]) *
                           static_cast<double>(s.nyz[yv * za_ + zv]);
        s.terms.push_back(c / dn * std::log2(num / den));
    }
    const double value = std::max(0.0, neumaier_sorted_sum(s.terms));

    for (const std::size_t c : s.txyz) s.nxyz[c] = 0;
    for (const std::size_t c : s.txz) s.nxz[c] = 0;
    for (const std::size_t c : s.tyz) s.nyz[c] = 0;
    for (const std::size_t c : s.tz) s.nz[c] = 0;
    s.txyz.clear();
    s.txz.clear();
    s.tyz.clear();
    s.tz.clear();
    return value;
}

}  // namespace infosel::detail
