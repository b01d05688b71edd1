// SPDX-License-Identifier: Apache-2.0
//
// coprime-array: sparse planar array design, coarray analysis and DOA estimation
// Copyright (C) 2026 The coprime-array authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "coprime/socp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coprime/kernels.hpp"
#include "coprime/types.hpp"

namespace coprime::socp
{
    namespace
    {
        using Eigen::Index;
        using Eigen::MatrixXd;
        using Eigen::VectorXd;

        constexpr double kInf = std::numeric_limits<double>::infinity();

        // x0^2 - ||x1||^2, factored for accuracy near the boundary.
        double jnorm_sq(const VectorXd &x)
        {
            if (x.size() == 1)
                return x(0) * x(0);
            const double r = x.tail(x.size() - 1).norm();
            return (x(0) - r) * (x(0) + r);
        }

        struct ConeLayout
        {
            std::vector<Index> offset;
            std::vector<Index> dim;

            explicit ConeLayout(const std::vector<int> &dims)
            {
                Index o = 0;
                for (int d : dims)
                {
                    offset.push_back(o);
                    dim.push_back(d);
                    o += d;
                }
            }
            std::size_t count() const { return dim.size(); }
            auto block(VectorXd &v, std::size_t k) const { return v.segment(offset[k], dim[k]); }
            auto block(const VectorXd &v, std::size_t k) const { return v.segment(offset[k], dim[k]); }
        };

        // -min eigenvalue of every cone block, maximized over cones.
        double max_violation(const VectorXd &v, const ConeLayout &cones)
        {
            double worst = -kInf;
            for (std::size_t k = 0; k < cones.count(); ++k)
            {
                const VectorXd x = cones.block(v, k);
                const double r = x.size() > 1 ? x.tail(x.size() - 1).norm() : 0.0;
                worst = std::max(worst, r - x(0));
            }
            return worst;
        }

        void add_identity(VectorXd &v, const ConeLayout &cones, double amount)
        {
            for (std::size_t k = 0; k < cones.count(); ++k)
                v(cones.offset[k]) += amount;
        }

        // Solves [H A^T; A 0] [x; y] = [r1; r2].
        class KktSolver
        {
        public:
            KktSolver(const MatrixXd &H, const MatrixXd &A)
                : n_(H.rows()), p_(A.rows())
            {
                K_.setZero(n_ + p_, n_ + p_);
                K_.topLeftCorner(n_, n_) = H;
                if (p_ > 0)
                {
                    K_.bottomLeftCorner(p_, n_) = A;
                    K_.topRightCorner(n_, p_) = A.transpose();
                }
                lu_.compute(K_);
            }

            bool ok() const
            {
                return std::isfinite(lu_.rcond()) && lu_.rcond() > 1e-300;
            }

            void solve(const VectorXd &r1, const VectorXd &r2, VectorXd &x, VectorXd &y) const
            {
                VectorXd rhs(n_ + p_);
                rhs << r1, r2;
                VectorXd sol = lu_.solve(rhs);
                sol += lu_.solve(rhs - K_ * sol); // one step of iterative refinement
                x = sol.head(n_);
                y = sol.tail(p_);
            }

        private:
            Index n_, p_;
            MatrixXd K_;
            Eigen::PartialPivLU<MatrixXd> lu_;
        };

        struct Direction
        {
            VectorXd dx, dy, ds, dz;
            VectorXd ds_scaled, dz_scaled; // W^{-1} ds and W dz
        };

    } // namespace

    void Problem::validate() const
    {
        const Index n = c.size();
        if (n == 0)
            throw ValidationError("socp: empty variable vector", "c");
        if (G.cols() != n || (A.rows() > 0 && A.cols() != n))
            throw ValidationError("socp: column count of G or A differs from size of c", "G");
        if (G.rows() != h.size())
            throw ValidationError("socp: rows of G differ from size of h", "h");
        if (A.rows() != b.size())
            throw ValidationError("socp: rows of A differ from size of b", "b");
        Index total = 0;
        for (int d : cone_dims)
        {
            if (d < 1)
                throw ValidationError("socp: cone dimension must be positive", "cone_dims");
            total += d;
        }
        if (total != G.rows())
            throw ValidationError("socp: cone dimensions do not add up to the rows of G", "cone_dims");
        if (!c.allFinite() || !G.allFinite() || !h.allFinite() || !A.allFinite() || !b.allFinite())
            throw ValidationError("socp: problem data must be finite", "G");
    }

    std::string to_string(Status s)
    {
        switch (s)
        {
        case Status::kOptimal:
            return "optimal";
        case Status::kIterationLimit:
            return "iteration_limit";
        case Status::kNumericalError:
            return "numerical_error";
        }
        return "unknown";
    }

    Eigen::VectorXd Scaling::apply(const Eigen::VectorXd &x) const
    {
        VectorXd out = 2.0 * w.dot(x) * w;
        out(0) -= x(0);
        out.tail(x.size() - 1) += x.tail(x.size() - 1);
        return beta * out;
    }

    Eigen::VectorXd Scaling::apply_inverse(const Eigen::VectorXd &x) const
    {
        VectorXd jw = w;
        jw.tail(w.size() - 1) *= -1.0;
        VectorXd out = 2.0 * jw.dot(x) * jw;
        out(0) -= x(0);
        out.tail(x.size() - 1) += x.tail(x.size() - 1);
        return out / beta;
    }

    Scaling nt_scaling(const Eigen::VectorXd &s, const Eigen::VectorXd &z)
    {
        const double sn = std::sqrt(jnorm_sq(s));
        const double zn = std::sqrt(jnorm_sq(z));
        const VectorXd sb = s / sn;
        VectorXd jzb = z / zn;
        const double gamma = std::sqrt((1.0 + sb.dot(jzb)) / 2.0);
        jzb.tail(jzb.size() - 1) *= -1.0;

        // Scaling point wbar, then the hyperbolic reflection vector (wbar + e) / sqrt(2 (wbar0 + 1)).
        VectorXd wbar = (sb + jzb) / (2.0 * gamma);
        wbar(0) += 1.0;
        Scaling W;
        W.w = wbar / std::sqrt(2.0 * wbar(0));
        W.beta = std::sqrt(sn / zn);
        return W;
    }

    Eigen::VectorXd jordan_product(const Eigen::VectorXd &x, const Eigen::VectorXd &y)
    {
        VectorXd out(x.size());
        out(0) = x.dot(y);
        const Index r = x.size() - 1;
        out.tail(r) = x(0) * y.tail(r) + y(0) * x.tail(r);
        return out;
    }

    Eigen::VectorXd jordan_divide(const Eigen::VectorXd &lambda, const Eigen::VectorXd &r)
    {
        const Index t = lambda.size() - 1;
        VectorXd u(lambda.size());
        u(0) = (lambda(0) * r(0) - lambda.tail(t).dot(r.tail(t))) / jnorm_sq(lambda);
        u.tail(t) = (r.tail(t) - u(0) * lambda.tail(t)) / lambda(0);
        return u;
    }

    double max_step(const Eigen::VectorXd &x, const Eigen::VectorXd &d)
    {
        if (x.size() == 1)
            return d(0) < 0.0 ? -x(0) / d(0) : kInf;

        // f(alpha) = (x0 + alpha d0)^2 - ||x1 + alpha d1||^2 = a alpha^2 + 2 b alpha + c, c > 0.
        const Index t = x.size() - 1;
        const double a = d(0) * d(0) - d.tail(t).squaredNorm();
        const double b = x(0) * d(0) - x.tail(t).dot(d.tail(t));
        const double c = jnorm_sq(x);
        const double scale = std::max(std::abs(a), std::abs(b));

        double alpha = kInf;
        if (d(0) < 0.0)
            alpha = -x(0) / d(0);
        if (scale == 0.0)
            return alpha;
        if (std::abs(a) <= 1e-15 * scale)
        {
            if (b < 0.0)
                alpha = std::min(alpha, -c / (2.0 * b));
            return alpha;
        }
        const double disc = b * b - a * c;
        if (disc < 0.0)
            return alpha;
        const double q = -(b + std::copysign(std::sqrt(disc), b));
        for (double root : {q / a, q != 0.0 ? c / q : kInf})
            if (root > 0.0)
                alpha = std::min(alpha, root);
        return alpha;
    }

    Result solve(const Problem &problem, const Options &options)
    {
        problem.validate();
        const ConeLayout cones(problem.cone_dims);
        const std::size_t nc = cones.count();
        const MatrixXd &G = problem.G;
        const MatrixXd &A = problem.A;
        const Index n = problem.c.size(), m = G.rows(), p = A.rows();
        const double degree = static_cast<double>(nc);

        auto gram = [&](const MatrixXd &rows) {
            return options.parallel ? kernels::gram_parallel(rows) : kernels::gram_serial(rows);
        };

        Result res;
        res.x.setZero(n);
        res.y.setZero(p);

        // Initial point: least-squares primal and least-norm dual, shifted into the cone interior.
        {
            KktSolver kkt(gram(G), A);
            if (!kkt.ok())
            {
                res.status = Status::kNumericalError;
                return res;
            }
            VectorXd x, y, u, yd;
            kkt.solve(G.transpose() * problem.h, problem.b, x, y);
            kkt.solve(-problem.c, VectorXd::Zero(p), u, yd);
            res.x = x;
            res.s = problem.h - G * x;
            res.y = yd;
            res.z = G * u;

            for (VectorXd *v : {&res.s, &res.z})
            {
                const double t = max_violation(*v, cones);
                if (t >= -1e-8 * std::max(v->norm(), 1.0))
                    add_identity(*v, cones, 1.0 + t);
            }
        }

        const double rx0 = std::max(1.0, problem.c.norm());
        const double ry0 = std::max(1.0, problem.b.norm());
        const double rz0 = std::max(1.0, problem.h.norm());

        std::vector<Scaling> W(nc);
        VectorXd lambda(m);
        MatrixXd Ghat(m, n);

        const double initial_gap = std::max(1.0, res.s.dot(res.z));
        auto accept_stalled = [&]() {
            return res.primal_residual <= options.stalled_feasibility_tolerance &&
                   res.dual_residual <= options.stalled_feasibility_tolerance &&
                   (res.gap <= options.absolute_gap || res.relative_gap <= options.stalled_relative_gap);
        };

        for (int it = 0;; ++it)
        {
            const VectorXd rx = problem.c + A.transpose() * res.y + G.transpose() * res.z;
            const VectorXd ry = A * res.x - problem.b;
            const VectorXd rz = G * res.x + res.s - problem.h;

            res.iterations = it;
            res.gap = res.s.dot(res.z);
            res.primal_objective = problem.c.dot(res.x);
            res.dual_objective = -problem.b.dot(res.y) - problem.h.dot(res.z);
            const double denom = std::max(std::abs(res.primal_objective), std::abs(res.dual_objective));
            res.relative_gap = denom > 0.0 ? res.gap / denom : kInf;
            res.primal_residual = std::max(p > 0 ? ry.norm() / ry0 : 0.0, rz.norm() / rz0);
            res.dual_residual = rx.norm() / rx0;

            if (res.primal_residual <= options.feasibility_tolerance && res.dual_residual <= options.feasibility_tolerance &&
                (res.gap <= options.absolute_gap || res.relative_gap <= options.relative_gap))
            {
                res.status = Status::kOptimal;
                return res;
            }
            if (it >= options.max_iterations)
            {
                res.status = Status::kIterationLimit;
                return res;
            }
            if (res.gap > 1e12 * initial_gap || !std::isfinite(res.gap))
            {
                res.status = Status::kNumericalError; // iterates diverge, typically an infeasible problem
                return res;
            }

            const double mu = res.gap / degree;

#pragma omp parallel for schedule(static)
            for (long k = 0; k < static_cast<long>(nc); ++k)
            {
                const auto kk = static_cast<std::size_t>(k);
                const Index o = cones.offset[kk], d = cones.dim[kk];
                W[kk] = nt_scaling(res.s.segment(o, d), res.z.segment(o, d));
                lambda.segment(o, d) = W[kk].apply(res.z.segment(o, d));

                // W^{-1} G block = (1/beta) (2 Jw (Jw)^T G - J G)
                VectorXd jw = W[kk].w;
                jw.tail(d - 1) *= -1.0;
                const Eigen::RowVectorXd proj = jw.transpose() * G.middleRows(o, d);
                auto out = Ghat.middleRows(o, d);
                out.noalias() = 2.0 * jw * proj;
                out.row(0) -= G.row(o);
                out.bottomRows(d - 1) += G.middleRows(o + 1, d - 1);
                out /= W[kk].beta;
            }

            const KktSolver kkt(gram(Ghat), A);
            if (!kkt.ok())
            {
                res.status = accept_stalled() ? Status::kOptimal : Status::kNumericalError;
                return res;
            }

            // Newton direction for the complementarity target lambda o (ds~ + dz~) = rc.
            auto direction = [&](const VectorXd &rc) {
                Direction dir;
                VectorXd u(m), v(m);
                for (std::size_t k = 0; k < nc; ++k)
                {
                    const Index o = cones.offset[k], d = cones.dim[k];
                    u.segment(o, d) = jordan_divide(lambda.segment(o, d), rc.segment(o, d));
                    v.segment(o, d) = u.segment(o, d) + W[k].apply_inverse(rz.segment(o, d));
                }
                kkt.solve(-rx - Ghat.transpose() * v, -ry, dir.dx, dir.dy);
                dir.dz_scaled = Ghat * dir.dx + v;
                dir.ds_scaled = u - dir.dz_scaled;
                dir.ds.resize(m);
                dir.dz.resize(m);
                for (std::size_t k = 0; k < nc; ++k)
                {
                    const Index o = cones.offset[k], d = cones.dim[k];
                    dir.ds.segment(o, d) = W[k].apply(dir.ds_scaled.segment(o, d));
                    dir.dz.segment(o, d) = W[k].apply_inverse(dir.dz_scaled.segment(o, d));
                }
                return dir;
            };

            auto step_to_boundary = [&](const Direction &dir) {
                double alpha = kInf;
                for (std::size_t k = 0; k < nc; ++k)
                {
                    const Index o = cones.offset[k], d = cones.dim[k];
                    alpha = std::min(alpha, max_step(res.s.segment(o, d), dir.ds.segment(o, d)));
                    alpha = std::min(alpha, max_step(res.z.segment(o, d), dir.dz.segment(o, d)));
                }
                return alpha;
            };

            VectorXd rc(m);
            for (std::size_t k = 0; k < nc; ++k)
            {
                const Index o = cones.offset[k], d = cones.dim[k];
                rc.segment(o, d) = -jordan_product(lambda.segment(o, d), lambda.segment(o, d));
            }
            const Direction affine = direction(rc);
            const double alpha_aff = std::min(1.0, step_to_boundary(affine));

            const double dsdz = affine.ds.dot(affine.dz);
            const double ratio = std::clamp(1.0 - alpha_aff + alpha_aff * alpha_aff * dsdz / res.gap, 0.0, 1.0);
            const double sigma = ratio * ratio * ratio;

            for (std::size_t k = 0; k < nc; ++k)
            {
                const Index o = cones.offset[k], d = cones.dim[k];
                rc.segment(o, d) -= jordan_product(affine.ds_scaled.segment(o, d), affine.dz_scaled.segment(o, d));
                rc(o) += sigma * mu;
            }
            const Direction dir = direction(rc);
            const double alpha = std::min(1.0, 0.99 * step_to_boundary(dir));
            if (!std::isfinite(alpha) || alpha < 1e-14 || !dir.dx.allFinite())
            {
                res.status = accept_stalled() ? Status::kOptimal : Status::kNumericalError;
                return res;
            }

            res.x += alpha * dir.dx;
            res.y += alpha * dir.dy;
            res.s += alpha * dir.ds;
            res.z += alpha * dir.dz;
        }
    }

} // namespace coprime::socp
