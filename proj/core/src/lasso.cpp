#include "netgate/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <Eigen/Dense>

namespace netgate {

std::vector<RowIndex> all_rows(std::size_t n) {
    std::vector<RowIndex> rows(n);
    std::iota(rows.begin(), rows.end(), RowIndex{0});
    return rows;
}

bool is_negligible_scale(double sd, double mean) noexcept {
    return !(sd > 1e-10 * std::max(1.0, std::abs(mean)));
}

DesignMatrix DesignMatrix::standardize(const Eigen::MatrixXd& X) {
    DesignMatrix d;
    const auto n = X.rows(), p = X.cols();
    if (n == 0) throw std::invalid_argument("standardize: empty design");
    d.means_ = X.colwise().mean().transpose();
    d.scales_.resize(p);
    d.standardized_.resize(n, p);
    d.zero_variance_.assign(static_cast<std::size_t>(p), false);
    for (Eigen::Index j = 0; j < p; ++j) {
        const Eigen::VectorXd c = X.col(j).array() - d.means_[j];
        const double sd = std::sqrt(c.squaredNorm() / static_cast<double>(n));
        d.scales_[j] = sd;
        if (is_negligible_scale(sd, d.means_[j])) {
            d.zero_variance_[static_cast<std::size_t>(j)] = true;
            d.standardized_.col(j).setZero();
        } else {
            d.standardized_.col(j) = c / sd;
        }
    }
    return d;
}

namespace {

// Sufficient statistics of (X, y) over a row multiset, accumulated around a
// fixed shift so that moments of disjoint parts can be added and subtracted.
struct Moments {
    double count = 0.0;
    Eigen::VectorXd sx;
    Eigen::MatrixXd sxx;
    Eigen::VectorXd sxy;
    double sy = 0.0;
    double syy = 0.0;

    explicit Moments(Eigen::Index p = 0)
        : sx(Eigen::VectorXd::Zero(p)), sxx(Eigen::MatrixXd::Zero(p, p)), sxy(Eigen::VectorXd::Zero(p)) {}

    Moments& operator-=(const Moments& o) {
        count -= o.count;
        sx -= o.sx;
        sxx -= o.sxx;
        sxy -= o.sxy;
        sy -= o.sy;
        syy -= o.syy;
        return *this;
    }
    Moments& operator+=(const Moments& o) {
        count += o.count;
        sx += o.sx;
        sxx += o.sxx;
        sxy += o.sxy;
        sy += o.sy;
        syy += o.syy;
        return *this;
    }
};

struct Shift {
    Eigen::VectorXd x;
    double y = 0.0;
};

Shift mean_shift(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const RowIndex> rows) {
    Shift s{Eigen::VectorXd::Zero(X.cols()), 0.0};
    for (RowIndex r : rows) {
        s.x += X.row(r).transpose();
        s.y += y[r];
    }
    const double m = static_cast<double>(rows.size());
    s.x /= m;
    s.y /= m;
    return s;
}

// Shifted copy of the selected rows, so Gram products are taken once.
struct ShiftedRows {
    Eigen::MatrixXd x;
    Eigen::VectorXd y;
};

ShiftedRows shifted_rows(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         std::span<const RowIndex> rows, const Shift& s) {
    ShiftedRows out{Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()), X.cols()),
                    Eigen::VectorXd(static_cast<Eigen::Index>(rows.size()))};
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const auto kk = static_cast<Eigen::Index>(k);
        out.x.row(kk) = X.row(rows[k]) - s.x.transpose();
        out.y[kk] = y[rows[k]] - s.y;
    }
    return out;
}

Moments moments_of(const ShiftedRows& d, std::span<const Eigen::Index> positions) {
    const auto p = d.x.cols();
    Moments m(p);
    Eigen::MatrixXd xs(static_cast<Eigen::Index>(positions.size()), p);
    Eigen::VectorXd ys(static_cast<Eigen::Index>(positions.size()));
    for (std::size_t k = 0; k < positions.size(); ++k) {
        xs.row(static_cast<Eigen::Index>(k)) = d.x.row(positions[k]);
        ys[static_cast<Eigen::Index>(k)] = d.y[positions[k]];
    }
    m.count = static_cast<double>(positions.size());
    m.sx = xs.colwise().sum().transpose();
    m.sxx.selfadjointView<Eigen::Lower>().rankUpdate(xs.transpose());
    m.sxx = m.sxx.selfadjointView<Eigen::Lower>();
    m.sxy = xs.transpose() * ys;
    m.sy = ys.sum();
    m.syy = ys.squaredNorm();
    return m;
}

Moments moments_all(const ShiftedRows& d) {
    std::vector<Eigen::Index> pos(static_cast<std::size_t>(d.x.rows()));
    std::iota(pos.begin(), pos.end(), Eigen::Index{0});
    return moments_of(d, pos);
}

// Standardized problem derived from moments: minimize
// 0.5 b'Gb - r'b + lambda sum w_j |b_j| over columns that are not constant.
struct Problem {
    Eigen::MatrixXd gram;
    Eigen::VectorXd r;
    double yvar = 0.0;
    Eigen::VectorXd mean;  // shifted column means
    double ymean = 0.0;    // shifted outcome mean
    Eigen::VectorXd sd;
    std::vector<bool> zero_variance;
};

// `constant` marks columns known to take a single value on the rows; they are
// excluded even when the moment arithmetic leaves rounding noise.
Problem make_problem(const Moments& m, const Shift& shift, const std::vector<bool>& constant) {
    const auto p = m.sx.size();
    Problem pr;
    const double n = m.count;
    pr.mean = m.sx / n;
    pr.ymean = m.sy / n;
    Eigen::MatrixXd cov = m.sxx / n - pr.mean * pr.mean.transpose();
    Eigen::VectorXd cxy = m.sxy / n - pr.mean * pr.ymean;
    pr.yvar = std::max(0.0, m.syy / n - pr.ymean * pr.ymean);
    pr.sd.resize(p);
    pr.zero_variance.assign(static_cast<std::size_t>(p), false);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double sd = std::sqrt(std::max(0.0, cov(j, j)));
        pr.sd[j] = sd;
        if (constant[static_cast<std::size_t>(j)] || is_negligible_scale(sd, pr.mean[j] + shift.x[j]))
            pr.zero_variance[static_cast<std::size_t>(j)] = true;
    }
    pr.gram = Eigen::MatrixXd::Zero(p, p);
    pr.r = Eigen::VectorXd::Zero(p);
    for (Eigen::Index j = 0; j < p; ++j) {
        if (pr.zero_variance[static_cast<std::size_t>(j)]) continue;
        pr.r[j] = cxy[j] / pr.sd[j];
        for (Eigen::Index k = 0; k < p; ++k) {
            if (pr.zero_variance[static_cast<std::size_t>(k)]) continue;
            pr.gram(j, k) = cov(j, k) / (pr.sd[j] * pr.sd[k]);
        }
        pr.gram(j, j) = 1.0;
    }
    return pr;
}

double soft_threshold(double z, double t) {
    if (z > t) return z - t;
    if (z < -t) return z + t;
    return 0.0;
}

// Per-column threshold; weight-0 columns are free even when lambda is infinite.
double threshold(std::span<const double> w, Eigen::Index j, double lambda) {
    const double wj = w[static_cast<std::size_t>(j)];
    return wj > 0.0 ? lambda * wj : 0.0;
}

double objective(const Problem& pr, const Eigen::VectorXd& beta, std::span<const double> w, double lambda) {
    double pen = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        if (beta[j] != 0.0) pen += threshold(w, j, lambda) * std::abs(beta[j]);
    return 0.5 * pr.yvar - pr.r.dot(beta) + 0.5 * beta.dot(pr.gram * beta) + pen;
}

struct SolveState {
    Eigen::VectorXd beta;
    int iterations = 0;
    bool converged = false;
};

// Once the sign pattern of the active set settles, the penalized objective
// restricted to that orthant face is a plain quadratic; jump to its minimizer
// when the result keeps the pattern and lowers the objective.
bool face_step(const Problem& pr, std::span<const double> w, double lambda, Eigen::VectorXd& beta,
               Eigen::VectorXd& grad) {
    std::vector<Eigen::Index> act;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
        if (beta[j] != 0.0) act.push_back(j);
    if (act.empty()) return false;
    const auto a = static_cast<Eigen::Index>(act.size());
    Eigen::MatrixXd g(a, a);
    Eigen::VectorXd rhs(a);
    for (Eigen::Index u = 0; u < a; ++u) {
        rhs[u] = pr.r[act[u]] - threshold(w, act[u], lambda) * (beta[act[u]] > 0.0 ? 1.0 : -1.0);
        for (Eigen::Index v = 0; v < a; ++v) g(u, v) = pr.gram(act[u], act[v]);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(g);
    if (llt.info() != Eigen::Success) return false;
    const Eigen::VectorXd sol = llt.solve(rhs);
    if (!sol.allFinite()) return false;
    Eigen::VectorXd cand = beta;
    for (Eigen::Index u = 0; u < a; ++u) {
        const Eigen::Index j = act[u];
        if (w[static_cast<std::size_t>(j)] > 0.0 && !(sol[u] * beta[j] > 0.0)) return false;
        cand[j] = sol[u];
    }
    if (!(objective(pr, cand, w, lambda) <= objective(pr, beta, w, lambda))) return false;
    beta = cand;
    grad = pr.r - pr.gram * beta;
    return true;
}

// Covariance-update coordinate descent with active-set cycling. `beta` is the
// warm start on entry.
void solve(const Problem& pr, std::span<const double> w, double lambda, const LassoOptions& opt,
           SolveState& st) {
    const auto p = pr.r.size();
    Eigen::VectorXd& beta = st.beta;
    for (Eigen::Index j = 0; j < p; ++j)
        if (pr.zero_variance[static_cast<std::size_t>(j)]) beta[j] = 0.0;
    Eigen::VectorXd grad = pr.r - pr.gram * beta;
    st.iterations = 0;
    st.converged = false;

    auto pattern = [&] {
        std::vector<signed char> s(static_cast<std::size_t>(p));
        for (Eigen::Index j = 0; j < p; ++j) s[static_cast<std::size_t>(j)] = static_cast<signed char>((beta[j] > 0) - (beta[j] < 0));
        return s;
    };
    auto sweep = [&](bool full) {
        double max_change = 0.0;
        for (Eigen::Index j = 0; j < p; ++j) {
            if (pr.zero_variance[static_cast<std::size_t>(j)]) continue;
            if (!full && beta[j] == 0.0) continue;
            const double old = beta[j];
            const double z = grad[j] + old;
            const double nb = soft_threshold(z, threshold(w, j, lambda));
            if (nb != old) {
                grad -= pr.gram.col(j) * (nb - old);
                beta[j] = nb;
                max_change = std::max(max_change, std::abs(nb - old));
            }
        }
        ++st.iterations;
        if (opt.objective_trace) opt.objective_trace->push_back(objective(pr, beta, w, lambda));
        return max_change;
    };

    std::vector<signed char> tried;
    while (st.iterations < opt.max_sweeps) {
        if (sweep(true) < opt.tolerance) {
            st.converged = true;
            return;
        }
        auto last = pattern();
        while (st.iterations < opt.max_sweeps) {
            if (sweep(false) < opt.tolerance) break;
            auto now = pattern();
            if (now == last && now != tried) {
                tried = now;
                face_step(pr, w, lambda, beta, grad);
            }
            last = std::move(now);
        }
    }
}

LassoFit finish_fit(const Problem& pr, const Shift& shift, const SolveState& st, double lambda) {
    const auto p = pr.r.size();
    LassoFit fit;
    fit.lambda = lambda;
    fit.iterations = st.iterations;
    fit.converged = st.converged;
    fit.zero_variance = pr.zero_variance;
    fit.standardized_coefficients = st.beta;
    fit.coefficients = Eigen::VectorXd::Zero(p);
    double intercept = pr.ymean + shift.y;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (st.beta[j] == 0.0) continue;
        fit.coefficients[j] = st.beta[j] / pr.sd[j];
        intercept -= fit.coefficients[j] * (pr.mean[j] + shift.x[j]);
        fit.active_set.push_back(static_cast<std::size_t>(j));
    }
    fit.intercept = intercept;
    return fit;
}

void check_inputs(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                  std::span<const double> w) {
    if (X.rows() != y.size()) throw std::invalid_argument("lasso: X and y row counts differ");
    if (static_cast<std::size_t>(X.cols()) != w.size())
        throw std::invalid_argument("lasso: one penalty weight per column required");
    if (rows.empty()) throw std::invalid_argument("lasso: no rows");
    for (RowIndex r : rows) {
        if (r < 0 || r >= X.rows()) throw std::out_of_range("lasso: row index out of range");
        if (!std::isfinite(y[r]) || !X.row(r).allFinite()) throw std::invalid_argument("lasso: non-finite input");
    }
    for (double v : w)
        if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("lasso: penalty weights must be finite and >= 0");
}

std::vector<bool> constant_columns(const ShiftedRows& d, std::span<const Eigen::Index> positions) {
    std::vector<bool> out(static_cast<std::size_t>(d.x.cols()), true);
    if (positions.empty()) return out;
    for (Eigen::Index j = 0; j < d.x.cols(); ++j) {
        const double first = d.x(positions.front(), j);
        for (auto k : positions)
            if (d.x(k, j) != first) {
                out[static_cast<std::size_t>(j)] = false;
                break;
            }
    }
    return out;
}

std::vector<bool> constant_columns_all(const ShiftedRows& d) {
    std::vector<Eigen::Index> pos(static_cast<std::size_t>(d.x.rows()));
    std::iota(pos.begin(), pos.end(), Eigen::Index{0});
    return constant_columns(d, pos);
}

constexpr double kExactFitRatio = 1e-10;

double lambda_max_of(const Problem& pr, std::span<const double> w) {
    const auto p = pr.r.size();
    std::vector<Eigen::Index> free_cols;
    bool any_penalized = false;
    for (Eigen::Index j = 0; j < p; ++j) {
        if (w[static_cast<std::size_t>(j)] > 0.0) any_penalized = true;
        else if (!pr.zero_variance[static_cast<std::size_t>(j)]) free_cols.push_back(j);
    }
    if (!any_penalized) throw std::invalid_argument("lambda_max: no penalized column");
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
    if (!free_cols.empty()) {
        const auto f = static_cast<Eigen::Index>(free_cols.size());
        Eigen::MatrixXd g(f, f);
        Eigen::VectorXd r(f);
        for (Eigen::Index a = 0; a < f; ++a) {
            r[a] = pr.r[free_cols[a]];
            for (Eigen::Index b = 0; b < f; ++b) g(a, b) = pr.gram(free_cols[a], free_cols[b]);
        }
        const Eigen::VectorXd sol = g.colPivHouseholderQr().solve(r);
        for (Eigen::Index a = 0; a < f; ++a) beta[free_cols[a]] = sol[a];
    }
    const Eigen::VectorXd grad = pr.r - pr.gram * beta;
    double lm = 0.0;
    // Scores at rounding level mean the free columns already explain y exactly.
    const double floor = kExactFitRatio * std::sqrt(pr.yvar);
    for (Eigen::Index j = 0; j < p; ++j) {
        const double wj = w[static_cast<std::size_t>(j)];
        if (wj > 0.0 && !pr.zero_variance[static_cast<std::size_t>(j)])
            lm = std::max(lm, std::abs(grad[j]) / wj);
    }
    return lm <= floor ? 0.0 : lm;
}

// Held-out squared error of a fit expressed in shifted coordinates.
double heldout_sse(const Moments& h, const LassoFit& fit, const Shift& shift) {
    const Eigen::VectorXd& b = fit.coefficients;
    const double a = fit.intercept + b.dot(shift.x) - shift.y;
    return h.syy - 2.0 * a * h.sy - 2.0 * b.dot(h.sxy) + h.count * a * a + 2.0 * a * b.dot(h.sx) +
           b.dot(h.sxx * b);
}

}  // namespace

LassoFit fit_weighted_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::span<const RowIndex> rows, std::span<const double> penalty_weights,
                            double lambda, const LassoOptions& options) {
    check_inputs(X, y, rows, penalty_weights);
    if (!(lambda >= 0.0)) throw std::invalid_argument("lasso: lambda must be >= 0");
    const Shift shift = mean_shift(X, y, rows);
    const ShiftedRows d = shifted_rows(X, y, rows, shift);
    const Problem pr = make_problem(moments_all(d), shift, constant_columns_all(d));
    SolveState st{Eigen::VectorXd::Zero(X.cols())};
    solve(pr, penalty_weights, lambda, options, st);
    return finish_fit(pr, shift, st, lambda);
}

LassoFit fit_weighted_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                            std::span<const double> penalty_weights, double lambda,
                            const LassoOptions& options) {
    const auto rows = all_rows(static_cast<std::size_t>(X.rows()));
    return fit_weighted_lasso(X, y, rows, penalty_weights, lambda, options);
}

double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                  std::span<const double> penalty_weights) {
    check_inputs(X, y, rows, penalty_weights);
    const Shift shift = mean_shift(X, y, rows);
    const ShiftedRows d = shifted_rows(X, y, rows, shift);
    return lambda_max_of(make_problem(moments_all(d), shift, constant_columns_all(d)), penalty_weights);
}

double lambda_max(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                  std::span<const double> penalty_weights) {
    const auto rows = all_rows(static_cast<std::size_t>(X.rows()));
    return lambda_max(X, y, rows, penalty_weights);
}

CvResult cv_lasso(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const RowIndex> rows,
                  std::span<const double> penalty_weights, const CvConfig& config,
                  const SeedStream& stream) {
    check_inputs(X, y, rows, penalty_weights);
    if (config.folds < 2) throw std::invalid_argument("cv_lasso: at least 2 folds required");
    if (config.grid_size < 1) throw std::invalid_argument("cv_lasso: empty lambda grid");
    if (!(config.min_ratio > 0.0 && config.min_ratio <= 1.0))
        throw std::invalid_argument("cv_lasso: min_ratio must lie in (0, 1]");
    const std::size_t m = rows.size();
    if (m < 2) throw std::invalid_argument("cv_lasso: at least 2 rows required");
    const int folds = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(config.folds), m));

    const Shift shift = mean_shift(X, y, rows);
    const ShiftedRows d = shifted_rows(X, y, rows, shift);
    const Moments total = moments_all(d);
    const Problem full = make_problem(total, shift, constant_columns_all(d));

    CvResult res;
    const double lmax = lambda_max_of(full, penalty_weights);
    res.lambdas.resize(static_cast<std::size_t>(config.grid_size));
    for (int k = 0; k < config.grid_size; ++k) {
        const double frac = config.grid_size == 1 ? 0.0 : static_cast<double>(k) / (config.grid_size - 1);
        res.lambdas[static_cast<std::size_t>(k)] = lmax * std::pow(config.min_ratio, frac);
    }

    // Seeded Fisher-Yates over positions; position k of the shuffle lands in fold k mod K.
    std::vector<Eigen::Index> perm(m);
    std::iota(perm.begin(), perm.end(), Eigen::Index{0});
    auto eng = stream.engine();
    for (std::size_t i = m - 1; i > 0; --i) std::swap(perm[i], perm[uniform_index(eng, i + 1)]);
    std::vector<std::vector<Eigen::Index>> fold_pos(static_cast<std::size_t>(folds));
    for (std::size_t k = 0; k < m; ++k) fold_pos[k % static_cast<std::size_t>(folds)].push_back(perm[k]);

    res.mean_error.assign(res.lambdas.size(), 0.0);
    for (const auto& held : fold_pos) {
        if (lmax == 0.0) break;
        const Moments h = moments_of(d, held);
        Moments train = total;
        train -= h;
        std::vector<Eigen::Index> train_pos;
        train_pos.reserve(m - held.size());
        {
            std::vector<bool> is_held(m, false);
            for (auto k : held) is_held[static_cast<std::size_t>(k)] = true;
            for (std::size_t k = 0; k < m; ++k)
                if (!is_held[k]) train_pos.push_back(static_cast<Eigen::Index>(k));
        }
        const Problem pr = make_problem(train, shift, constant_columns(d, train_pos));
        SolveState st{Eigen::VectorXd::Zero(X.cols())};
        for (std::size_t l = 0; l < res.lambdas.size(); ++l) {
            solve(pr, penalty_weights, res.lambdas[l], config.solver, st);
            const LassoFit fit = finish_fit(pr, shift, st, res.lambdas[l]);
            res.mean_error[l] += heldout_sse(h, fit, shift);
        }
    }
    for (auto& e : res.mean_error) e /= static_cast<double>(m);
    res.best = static_cast<std::size_t>(
        std::min_element(res.mean_error.begin(), res.mean_error.end()) - res.mean_error.begin());
    res.lambda = res.lambdas[res.best];

    // A zero lambda_max leaves nothing for the penalized columns to explain;
    // keep them out rather than letting rounding noise in at lambda 0.
    const double fit_lambda = lmax > 0.0 ? res.lambda : std::numeric_limits<double>::infinity();
    SolveState st{Eigen::VectorXd::Zero(X.cols())};
    solve(full, penalty_weights, fit_lambda, config.solver, st);
    res.fit = finish_fit(full, shift, st, res.lambda);
    return res;
}

double cv_select_lambda(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                        std::span<const double> penalty_weights, int n_folds, int grid_size,
                        const SeedStream& stream) {
    CvConfig cfg;
    cfg.folds = n_folds;
    cfg.grid_size = grid_size;
    const auto rows = all_rows(static_cast<std::size_t>(X.rows()));
    return cv_lasso(X, y, rows, penalty_weights, cfg, stream).lambda;
}

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, std::span<const RowIndex> rows) {
    if (X.rows() != y.size()) throw std::invalid_argument("ols: X and y row counts differ");
    const auto p = X.cols();
    const auto m = static_cast<Eigen::Index>(rows.size());
    if (m < p + 1) throw std::invalid_argument("ols: need at least columns + 1 rows");
    for (RowIndex r : rows)
        if (r < 0 || r >= X.rows()) throw std::out_of_range("ols: row index out of range");
    double ysum = 0.0;
    for (RowIndex r : rows) ysum += y[r];
    const double ybar = ysum / static_cast<double>(m);
    OlsFit fit;
    fit.coefficients = Eigen::VectorXd::Zero(p);
    fit.intercept = ybar;
    if (p == 0) return fit;
    Eigen::VectorXd xbar = Eigen::VectorXd::Zero(p);
    for (RowIndex r : rows) xbar += X.row(r).transpose();
    xbar /= static_cast<double>(m);
    Eigen::MatrixXd xc(m, p);
    Eigen::VectorXd yc(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        xc.row(k) = X.row(rows[static_cast<std::size_t>(k)]) - xbar.transpose();
        yc[k] = y[rows[static_cast<std::size_t>(k)]] - ybar;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(xc);
    fit.rank = static_cast<int>(qr.rank());
    fit.rank_deficient = fit.rank < p;
    // Basic solution on the leading rank x rank block; qr.solve() uses its own
    // nonzero-pivot count, which can disagree with rank().
    const Eigen::Index r = qr.rank();
    Eigen::VectorXd qty = qr.householderQ().transpose() * yc;
    Eigen::VectorXd z = qr.matrixR().topLeftCorner(r, r).triangularView<Eigen::Upper>().solve(qty.head(r));
    for (Eigen::Index k = 0; k < r; ++k) fit.coefficients[qr.colsPermutation().indices()[k]] = z[k];
    fit.intercept = ybar - xbar.dot(fit.coefficients);
    return fit;
}

OlsFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const auto rows = all_rows(static_cast<std::size_t>(X.rows()));
    return ols_fit(X, y, rows);
}

}  // namespace netgate
