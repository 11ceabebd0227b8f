#include <algorithm>
#include <cmath>

#include "learners_detail.hpp"
#include "nabfs/learners.hpp"

namespace nabfs {

namespace detail {

// Population mean/sd per column. Exactly constant columns get scale 1 and a
// zeroed standardized column, so their coefficients (and importances) are
// exactly 0.
void standardize_columns(const Eigen::MatrixXd& X, Eigen::MatrixXd& Xs,
                         Eigen::VectorXd& mean, Eigen::VectorXd& scale) {
    const Eigen::Index n = X.rows();
    const Eigen::Index m = X.cols();
    Xs.resize(n, m);
    mean.resize(m);
    scale.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
        const auto col = X.col(j);
        if (col.maxCoeff() == col.minCoeff()) {
            mean(j) = col(0);
            scale(j) = 1.0;
            Xs.col(j).setZero();
            continue;
        }
        mean(j) = col.mean();
        const double var = (col.array() - mean(j)).square().sum() /
                           static_cast<double>(n);
        scale(j) = std::sqrt(var);
        Xs.col(j) = (col.array() - mean(j)) / scale(j);
    }
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace detail

double logistic_penalized_nll(const Eigen::MatrixXd& Xs,
                              const Eigen::VectorXd& y,
                              const Eigen::VectorXd& coef, double intercept,
                              double l2_penalty) {
    const Eigen::Index n = Xs.rows();
    const Eigen::VectorXd eta =
        (Xs * coef).array() + intercept;
    double nll = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        // log(1 + exp(eta)) - y*eta, computed stably
        const double e = eta(i);
        const double log1pexp = e > 0.0 ? e + std::log1p(std::exp(-e))
                                        : std::log1p(std::exp(e));
        nll += log1pexp - y(i) * e;
    }
    nll /= static_cast<double>(n);
    return nll + 0.5 * l2_penalty * coef.squaredNorm();
}

Eigen::VectorXd logistic_penalized_gradient(const Eigen::MatrixXd& Xs,
                                            const Eigen::VectorXd& y,
                                            const Eigen::VectorXd& coef,
                                            double intercept,
                                            double l2_penalty) {
    const Eigen::Index n = Xs.rows();
    const Eigen::Index m = Xs.cols();
    Eigen::VectorXd mu(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        mu(i) = detail::sigmoid(Xs.row(i).dot(coef) + intercept);
    }
    const Eigen::VectorXd resid = (mu - y) / static_cast<double>(n);
    Eigen::VectorXd grad(m + 1);
    grad.head(m) = Xs.transpose() * resid + l2_penalty * coef;
    grad(m) = resid.sum();
    return grad;
}

namespace {

struct IrlsOutcome {
    bool converged = false;
    Eigen::VectorXd coef;
    double intercept = 0.0;
    int iterations = 0;
};

IrlsOutcome run_irls(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& y,
                     double l2_penalty, int max_iter, double tol) {
    const Eigen::Index n = Xs.rows();
    const Eigen::Index m = Xs.cols();
    IrlsOutcome out;
    out.coef = Eigen::VectorXd::Zero(m);
    const double ybar = y.mean();
    out.intercept = std::log(ybar / (1.0 - ybar));

    double objective =
        logistic_penalized_nll(Xs, y, out.coef, out.intercept, l2_penalty);

    for (int iter = 0; iter < max_iter; ++iter) {
        out.iterations = iter + 1;
        const Eigen::VectorXd grad = logistic_penalized_gradient(
            Xs, y, out.coef, out.intercept, l2_penalty);
        if (grad.lpNorm<Eigen::Infinity>() <= tol) {
            out.converged = true;
            out.iterations = iter;
            return out;
        }

        Eigen::VectorXd mu(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            mu(i) = detail::sigmoid(Xs.row(i).dot(out.coef) + out.intercept);
        }
        const Eigen::VectorXd w = (mu.array() * (1.0 - mu.array())).matrix() /
                                  static_cast<double>(n);

        // Newton system on [coef; intercept]
        Eigen::MatrixXd hess(m + 1, m + 1);
        hess.topLeftCorner(m, m) =
            Xs.transpose() * w.asDiagonal() * Xs +
            l2_penalty * Eigen::MatrixXd::Identity(m, m);
        const Eigen::VectorXd xw = Xs.transpose() * w;
        hess.block(0, m, m, 1) = xw;
        hess.block(m, 0, 1, m) = xw.transpose();
        hess(m, m) = w.sum();

        Eigen::LDLT<Eigen::MatrixXd> ldlt(hess);
        if (ldlt.info() != Eigen::Success) return out;
        const Eigen::VectorXd delta = ldlt.solve(-grad);
        if (!delta.allFinite()) return out;

        // step-halving line search on the penalized objective
        double step = 1.0;
        bool accepted = false;
        for (int half = 0; half < 40; ++half) {
            const Eigen::VectorXd coef_try = out.coef + step * delta.head(m);
            const double icpt_try = out.intercept + step * delta(m);
            const double obj_try =
                logistic_penalized_nll(Xs, y, coef_try, icpt_try, l2_penalty);
            if (std::isfinite(obj_try) && obj_try <= objective) {
                out.coef = coef_try;
                out.intercept = icpt_try;
                objective = obj_try;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) return out;
    }
    // final gradient check after exhausting iterations
    const Eigen::VectorXd grad = logistic_penalized_gradient(
        Xs, y, out.coef, out.intercept, l2_penalty);
    out.converged = grad.lpNorm<Eigen::Infinity>() <= tol;
    out.iterations = max_iter;
    return out;
}

}  // namespace

namespace detail {

LinearModel fit_logistic(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                         const LogisticSpec& spec) {
    bool has_zero = false, has_one = false;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        if (y(i) == 0.0) has_zero = true;
        else if (y(i) == 1.0) has_one = true;
        else throw DegenerateResponseError("logistic response must be 0/1");
    }
    if (!has_zero || !has_one) {
        throw DegenerateResponseError("logistic fit needs both classes");
    }

    LinearModel model;
    model.logistic = true;
    Eigen::MatrixXd Xs;
    standardize_columns(X, Xs, model.column_mean, model.column_scale);

    IrlsOutcome out = run_irls(Xs, y, spec.l2_penalty, spec.max_iter, spec.tol);
    if (!out.converged && spec.l2_penalty < 1e-10) {
        // ridge fallback: separable or singular problems have no finite
        // unpenalized optimum
        for (double fallback : {1e-6, 1e-3}) {
            out = run_irls(Xs, y, fallback, spec.max_iter, spec.tol);
            if (out.converged) break;
        }
    }
    if (!out.converged) throw NonConvergenceError(spec.max_iter, "logistic IRLS");

    model.coefficients = std::move(out.coef);
    model.intercept = out.intercept;
    model.iterations = out.iterations;
    return model;
}

LinearModel fit_linear(const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
                       const LinearSpec& spec) {
    LinearModel model;
    model.logistic = false;
    Eigen::MatrixXd Xs;
    standardize_columns(X, Xs, model.column_mean, model.column_scale);

    const Eigen::Index n = X.rows();
    const Eigen::Index m = X.cols();
    const double ybar = y.mean();
    const Eigen::VectorXd yc = y.array() - ybar;

    // Centered columns make the intercept separable; ridge keeps the normal
    // equations nonsingular for constant (zeroed) columns too.
    const double ridge = std::max(spec.l2_penalty, 1e-12);
    Eigen::MatrixXd gram = Xs.transpose() * Xs / static_cast<double>(n) +
                           ridge * Eigen::MatrixXd::Identity(m, m);
    const Eigen::VectorXd rhs = Xs.transpose() * yc / static_cast<double>(n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(gram);
    if (ldlt.info() != Eigen::Success) {
        throw NonConvergenceError(1, "linear ridge solve");
    }
    model.coefficients = ldlt.solve(rhs);
    model.intercept = ybar;
    model.iterations = 1;
    return model;
}

}  // namespace detail

Eigen::VectorXd LinearModel::raw_coefficients() const {
    return (coefficients.array() / column_scale.array()).matrix();
}

double LinearModel::raw_intercept() const {
    return intercept -
           (coefficients.array() * column_mean.array() / column_scale.array())
               .sum();
}

}  // namespace nabfs
