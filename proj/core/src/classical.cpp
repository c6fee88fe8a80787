#include "efinv/classical.hpp"

#include <random>
#include <utility>
#include <string>

namespace efinv {

ComplexMatrix moore_penrose(const ComplexMatrix& a, const ToleranceContext& tol)
{
    return pseudo_inverse_from(svd(a, tol));
}

InnerInverseSampler::InnerInverseSampler(const ComplexMatrix& a, std::uint64_t seed, const ToleranceContext& tol)
    : base_(moore_penrose(a, tol)), seed_(seed)
{
    left_proj_ = base_ * a;
    right_proj_ = a * base_;
}

ComplexMatrix InnerInverseSampler::with_parameter(const ComplexMatrix& z) const
{
    require_same_shape(z, base_, "InnerInverseSampler::with_parameter");
    return base_ + z - left_proj_ * z * right_proj_;
}

ComplexMatrix InnerInverseSampler::sample(std::uint64_t draw) const
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed_), static_cast<std::uint32_t>(seed_ >> 32),
                      static_cast<std::uint32_t>(draw), static_cast<std::uint32_t>(draw >> 32)};
    std::mt19937_64 gen(seq);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix z(base_.rows(), base_.cols());
    for (Index j = 0; j < z.cols(); ++j)
        for (Index i = 0; i < z.rows(); ++i) {
            const double re = dist(gen);
            const double im = dist(gen);
            z(i, j) = Complex(re, im);
        }
    return with_parameter(z);
}

ComplexMatrix sample_inner_inverse(const InnerInverseSampler& sampler, std::uint64_t draw)
{
    return sampler.sample(draw);
}

ComplexMatrix drazin(const ComplexMatrix& a, const ToleranceContext& tol)
{
    require_square(a, "drazin");
    const int l = matrix_index(a, tol);
    if (l == 0)
        return moore_penrose(a, tol);

    const ComplexMatrix al = matrix_power(a, l);
    const Index r = power_rank(a, l, tol);
    if (r == 0)
        return zeros(a.rows(), a.cols());
    const ComplexMatrix core = al * a * al;
    return al * pseudo_inverse_from(svd(core, tol), r) * al;
}

ComplexMatrix group_inverse(const ComplexMatrix& a, const ToleranceContext& tol)
{
    require_square(a, "group_inverse");
    const int k = matrix_index(a, tol);
    if (k > 1)
        throw IndexTooLarge("group_inverse: matrix index is " + std::to_string(k) + ", the group inverse needs <= 1",
                            k);
    return drazin(a, tol);
}

namespace {

// Empty when A^(2)_{T,S} exists, otherwise the violated condition and a message.
std::pair<std::string, std::string> outer_obstruction(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                                                      const ToleranceContext& tol)
{
    const Index m = a.rows();
    const Index n = a.cols();
    if (t.ambient_dim() != n || s.ambient_dim() != m)
        throw ShapeMismatch("outer_prescribed: T must live in C^" + std::to_string(n) + " and S in C^" +
                            std::to_string(m));
    const Index dim_t = t.dim();
    const Index rank = numerical_rank(a, tol);
    if (dim_t > rank)
        return {"dim T <= rank A",
                "dim T = " + std::to_string(dim_t) + " exceeds rank(A) = " + std::to_string(rank)};
    if (s.dim() != m - dim_t)
        return {"dim S = m - dim T",
                "dim S = " + std::to_string(s.dim()) + " but m - dim T = " + std::to_string(m - dim_t)};
    if (dim_t == 0)
        return {};
    ComplexMatrix stacked(m, m);
    stacked << a * t.basis(), s.basis();
    if (numerical_rank(stacked, tol) < m)
        return {"A T (+) S = C^m", "A T (+) S does not fill C^" + std::to_string(m)};
    return {};
}

} // namespace

bool outer_prescribed_exists(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                             const ToleranceContext& tol)
{
    return outer_obstruction(a, t, s, tol).first.empty();
}

ComplexMatrix outer_prescribed(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                               const ToleranceContext& tol)
{
    if (auto [violated, message] = outer_obstruction(a, t, s, tol); !violated.empty())
        throw NotExistent("outer_prescribed: " + message, {violated});
    if (t.dim() == 0)
        return zeros(a.cols(), a.rows());

    // W spans the annihilator of S, so N(X) = S; B_T on the left gives R(X) = T.
    const ComplexMatrix image = a * t.basis();
    const ComplexMatrix w = orthogonal_complement(s, tol).basis().adjoint();
    const ComplexMatrix middle = w * image;
    return t.basis() * middle.partialPivLu().solve(w);
}

OuterResiduals outer_prescribed_residuals(const ComplexMatrix& a, const Subspace& t, const Subspace& s,
                                          const ComplexMatrix& x, const ToleranceContext& tol)
{
    OuterResiduals out;
    out.outer = (x * a * x - x).norm();

    const Subspace s_perp = orthogonal_complement(s, tol);
    const Subspace pulled = Subspace::span_of(a.adjoint() * s_perp.basis(), tol);
    const ComplexMatrix xa_target = oblique_projector(t, orthogonal_complement(pulled, tol), tol);
    out.xa_projector = (x * a - xa_target).norm();

    const Subspace image = Subspace::span_of(a * t.basis(), tol);
    const ComplexMatrix ax_target = oblique_projector(image, s, tol);
    out.ax_projector = (a * x - ax_target).norm();
    return out;
}

} // namespace efinv
