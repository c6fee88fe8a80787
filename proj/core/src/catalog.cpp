#include "efinv/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "efinv/classical.hpp"

namespace efinv {

namespace {

struct NameInfo {
    InverseName name;
    std::string_view label;
    bool bilateral;
    bool subspaces;
    bool power;
    bool rectangular;
};

constexpr std::array<NameInfo, 21> kNames{{
    {InverseName::Gmp, "GMP", true, false, false, false},
    {InverseName::Mpg, "MPG", true, false, false, false},
    {InverseName::Dmp, "DMP", true, false, false, false},
    {InverseName::Mpd, "MPD", true, false, false, false},
    {InverseName::Cmp, "CMP", true, false, false, false},
    {InverseName::Mpcep, "MPCEP", true, false, false, false},
    {InverseName::Cepmp, "*CEPMP", true, false, false, false},
    {InverseName::Wgmp, "WGMP", true, false, false, false},
    {InverseName::Mpwg, "MPWG", true, false, false, false},
    {InverseName::Omp, "OMP", true, true, false, true},
    {InverseName::Mpo, "MPO", true, true, false, true},
    {InverseName::Mpomp, "MPOMP", true, true, false, true},
    {InverseName::Bt, "BT", false, false, false, false},
    {InverseName::Cep, "CEP", false, false, false, false},
    {InverseName::DualCep, "*CEP", false, false, false, false},
    {InverseName::Wg, "WG", false, false, false, false},
    {InverseName::Gg, "GG", false, false, false, false},
    {InverseName::MWg, "m-WG", false, false, true, false},
    {InverseName::MWc, "m-WC", false, false, true, false},
    {InverseName::KOmp, "k-OMP", false, true, false, false},
    {InverseName::KMpo, "k-MPO", false, true, false, false},
}};

constexpr std::array<InverseName, 21> kOrder = [] {
    std::array<InverseName, 21> out{};
    for (std::size_t i = 0; i < kNames.size(); ++i)
        out[i] = kNames[i].name;
    return out;
}();

const NameInfo& info(InverseName name)
{
    for (const auto& n : kNames)
        if (n.name == name)
            return n;
    throw BadParams("unknown catalog name");
}

std::string upper(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

// Building blocks shared by the closed forms, computed on first use.
class Ingredients {
public:
    Ingredients(const ComplexMatrix& a, const ToleranceContext& tol) : a_(a), tol_(tol) {}

    const ComplexMatrix& a() const { return a_; }

    int index()
    {
        if (!index_)
            index_ = matrix_index(a_, tol_);
        return *index_;
    }

    const ComplexMatrix& pinv()
    {
        if (!pinv_)
            pinv_ = moore_penrose(a_, tol_);
        return *pinv_;
    }

    // P_A = A A^dagger, Q_A = A^dagger A
    const ComplexMatrix& p_a()
    {
        if (!p_a_)
            p_a_ = a_ * pinv();
        return *p_a_;
    }

    const ComplexMatrix& q_a()
    {
        if (!q_a_)
            q_a_ = pinv() * a_;
        return *q_a_;
    }

    const ComplexMatrix& drazin_inv()
    {
        if (!drazin_)
            drazin_ = drazin(a_, tol_);
        return *drazin_;
    }

    const ComplexMatrix& group_inv()
    {
        if (index() > 1)
            throw IndexTooLarge("matrix index is " + std::to_string(index()) + "; GMP/MPG need index <= 1", index());
        return drazin_inv();
    }

    // Orthogonal projectors onto R(A^j) and R((A^j)^*).
    ComplexMatrix p_power(int j) { return orthogonal_projector(range_of(power_svd(a_, j, tol_))); }
    ComplexMatrix q_power(int j)
    {
        const SvdFactorization f = power_svd(a_, j, tol_);
        const auto v = f.V.leftCols(f.rank);
        return v * v.adjoint();
    }

    const ComplexMatrix& p_ak()
    {
        if (!p_ak_)
            p_ak_ = p_power(index());
        return *p_ak_;
    }

    const ComplexMatrix& q_ak()
    {
        if (!q_ak_)
            q_ak_ = q_power(index());
        return *q_ak_;
    }

    const ComplexMatrix& core_ep()
    {
        if (!core_ep_)
            core_ep_ = drazin_inv() * p_ak();
        return *core_ep_;
    }

    const ComplexMatrix& dual_core_ep()
    {
        if (!dual_core_ep_)
            dual_core_ep_ = q_ak() * drazin_inv();
        return *dual_core_ep_;
    }

    // (A^cEP)^{m+1} A^m
    ComplexMatrix weak_group(int m) { return matrix_power(core_ep(), m + 1) * matrix_power(a_, m); }

private:
    const ComplexMatrix& a_;
    ToleranceContext tol_;
    std::optional<int> index_;
    std::optional<ComplexMatrix> pinv_, p_a_, q_a_, drazin_, p_ak_, q_ak_, core_ep_, dual_core_ep_;
};

struct Triple {
    ComplexMatrix x;
    ComplexMatrix e;
    ComplexMatrix f;
    std::string formula;
};

Triple evaluate(InverseName name, Ingredients& g, const CatalogEntry& entry, const ToleranceContext& tol)
{
    const ComplexMatrix& a = g.a();
    auto outer = [&] { return outer_prescribed(a, *entry.t, *entry.s, tol); };

    switch (name) {
    case InverseName::Gmp: {
        const ComplexMatrix& h = g.group_inv();
        return {h * g.p_a(), h * a, g.p_a(), "A^# P_A"};
    }
    case InverseName::Mpg: {
        const ComplexMatrix& h = g.group_inv();
        return {g.q_a() * h, g.q_a(), a * h, "Q_A A^#"};
    }
    case InverseName::Dmp: {
        const ComplexMatrix& d = g.drazin_inv();
        return {d * g.p_a(), d * a, a * d * g.p_a(), "A^d P_A"};
    }
    case InverseName::Mpd: {
        const ComplexMatrix& d = g.drazin_inv();
        return {g.q_a() * d, g.q_a() * d * a, a * d, "Q_A A^d"};
    }
    case InverseName::Cmp: {
        const ComplexMatrix& d = g.drazin_inv();
        return {g.q_a() * d * g.p_a(), g.q_a() * d * a, a * d * g.p_a(), "Q_A A^d P_A"};
    }
    case InverseName::Mpcep: {
        const ComplexMatrix& c = g.core_ep();
        return {g.q_a() * c, g.q_a() * c * a, a * c, "Q_A A^cEP"};
    }
    case InverseName::Cepmp: {
        const ComplexMatrix& c = g.dual_core_ep();
        return {c * g.p_a(), c * a, a * c * g.p_a(), "A_cEP P_A"};
    }
    case InverseName::Wgmp: {
        const ComplexMatrix w = g.weak_group(1);
        return {w * g.p_a(), w * a, a * w * g.p_a(), "A^w P_A"};
    }
    case InverseName::Mpwg: {
        const ComplexMatrix w = g.weak_group(1);
        return {g.q_a() * w, g.q_a() * w * a, a * w, "Q_A A^w"};
    }
    case InverseName::Omp: {
        const ComplexMatrix o = outer();
        return {o * g.p_a(), o * a, a * o * g.p_a(), "A^(2)_{T,S} P_A"};
    }
    case InverseName::Mpo: {
        const ComplexMatrix o = outer();
        return {g.q_a() * o, g.q_a() * o * a, a * o, "Q_A A^(2)_{T,S}"};
    }
    case InverseName::Mpomp: {
        const ComplexMatrix o = outer();
        return {g.q_a() * o * g.p_a(), g.q_a() * o * a, a * o * g.p_a(), "Q_A A^(2)_{T,S} P_A"};
    }
    case InverseName::Bt: {
        const ComplexMatrix x = moore_penrose(a * g.p_a(), tol);
        return {x, x * a, g.p_power(2), "(A P_A)^dagger"};
    }
    case InverseName::Cep: {
        const ComplexMatrix& c = g.core_ep();
        return {c, c * a, g.p_ak(), "A^d P_{A^k}"};
    }
    case InverseName::DualCep: {
        const ComplexMatrix& c = g.dual_core_ep();
        return {c, g.q_ak(), a * c, "Q_{A^k} A^d"};
    }
    case InverseName::Wg:
    case InverseName::Gg:
    case InverseName::MWg: {
        const int m = name == InverseName::Wg ? 1 : (name == InverseName::Gg ? 2 : *entry.m);
        const ComplexMatrix cm1 = matrix_power(g.core_ep(), m + 1);
        const ComplexMatrix am = matrix_power(a, m);
        return {cm1 * am, cm1 * am * a, a * cm1 * am, "(A^cEP)^" + std::to_string(m + 1) + " A^" + std::to_string(m)};
    }
    case InverseName::MWc: {
        const int m = *entry.m;
        const ComplexMatrix x = g.weak_group(m) * g.p_power(m);
        return {x, x * a, a * x, "A^w_" + std::to_string(m) + " P_{A^" + std::to_string(m) + "}"};
    }
    case InverseName::KOmp: {
        const ComplexMatrix x = outer() * g.p_ak();
        return {x, x * a, a * x, "A^(2)_{T,S} P_{A^k}"};
    }
    case InverseName::KMpo: {
        const ComplexMatrix x = g.q_ak() * outer();
        return {x, x * a, a * x, "Q_{A^k} A^(2)_{T,S}"};
    }
    }
    throw BadParams("unknown catalog name");
}

} // namespace

std::span<const InverseName> all_inverse_names()
{
    return kOrder;
}

std::string_view canonical_name(InverseName name)
{
    return info(name).label;
}

InverseName parse_inverse_name(std::string_view text)
{
    const std::string key = upper(text);
    if (key == "CORE")
        return InverseName::Gmp;
    if (key == "DUAL-CORE")
        return InverseName::Mpg;
    for (const auto& n : kNames)
        if (upper(n.label) == key)
            return n.name;
    throw BadParams("unknown inverse name '" + std::string(text) + "'");
}

bool is_bilateral(InverseName name)
{
    return info(name).bilateral;
}

bool needs_subspaces(InverseName name)
{
    return info(name).subspaces;
}

bool needs_power(InverseName name)
{
    return info(name).power;
}

bool allows_rectangular(InverseName name)
{
    return info(name).rectangular;
}

void CatalogEntry::validate() const
{
    const std::string label(canonical_name(name));
    if (needs_subspaces(name) && (!t || !s))
        throw BadParams(label + " needs the subspaces T and S");
    if (needs_power(name)) {
        if (!m)
            throw BadParams(label + " needs the power m");
        if (*m < 1)
            throw BadParams(label + " needs m >= 1, got " + std::to_string(*m));
    }
    if (name == InverseName::Gg && m && *m != 2)
        throw BadParams("GG is the m = 2 weak group inverse; got m = " + std::to_string(*m));
}

CatalogResult named_inverse(const ComplexMatrix& a, const CatalogEntry& entry, const ToleranceContext& tol)
{
    entry.validate();
    require_finite(a, "named_inverse");
    if (!allows_rectangular(entry.name))
        require_square(a, std::string(canonical_name(entry.name)).c_str());

    Ingredients g(a, tol);
    Triple t = evaluate(entry.name, g, entry, tol);

    CatalogResult out;
    out.certificate = ef_verify(a, t.e, t.f, t.x, tol);
    out.x = std::move(t.x);
    out.e = std::move(t.e);
    out.f = std::move(t.f);
    out.bilateral = is_bilateral(entry.name);
    out.formula_id = std::move(t.formula);
    if (a.rows() == a.cols())
        out.index = g.index();
    if (entry.name == InverseName::Wg) {
        const ComplexMatrix ax2 = a * out.x * out.x;
        out.extra.push_back({"AX^2 = X", (ax2 - out.x).norm(), tol.residual_threshold(ax2.norm()),
                             (ax2 - out.x).norm() < tol.residual_threshold(ax2.norm())});
    }
    return out;
}

CrosscheckReport catalog_crosscheck(const ComplexMatrix& a, const CatalogEntry& entry, const ToleranceContext& tol)
{
    if (!is_bilateral(entry.name))
        throw BadParams(std::string(canonical_name(entry.name)) + " is not a generalized bilateral inverse");

    CrosscheckReport out;
    out.named = named_inverse(a, entry, tol);

    Ingredients g(a, tol);
    ComplexMatrix x1;
    switch (entry.name) {
    case InverseName::Gmp:
    case InverseName::Mpg:
        x1 = g.group_inv();
        out.outer_factor = "A^#";
        break;
    case InverseName::Dmp:
    case InverseName::Mpd:
        x1 = g.drazin_inv();
        out.outer_factor = "A^d";
        break;
    case InverseName::Cmp:
        x1 = g.q_a() * g.drazin_inv();
        out.outer_factor = "A^dagger A A^d";
        break;
    case InverseName::Mpcep:
        x1 = g.core_ep();
        out.outer_factor = "A^cEP";
        break;
    case InverseName::Cepmp:
        x1 = g.dual_core_ep();
        out.outer_factor = "A_cEP";
        break;
    case InverseName::Wgmp:
    case InverseName::Mpwg:
        x1 = g.weak_group(1);
        out.outer_factor = "A^w";
        break;
    case InverseName::Omp:
    case InverseName::Mpo:
        x1 = outer_prescribed(a, *entry.t, *entry.s, tol);
        out.outer_factor = "A^(2)_{T,S}";
        break;
    case InverseName::Mpomp:
        x1 = g.q_a() * outer_prescribed(a, *entry.t, *entry.s, tol);
        out.outer_factor = "A^dagger A A^(2)_{T,S}";
        break;
    default:
        throw BadParams("catalog_crosscheck: unhandled name");
    }

    switch (entry.name) {
    case InverseName::Mpg:
    case InverseName::Mpd:
    case InverseName::Mpcep:
    case InverseName::Mpwg:
    case InverseName::Mpo:
        out.order = BilateralOrder::InnerFirst;
        break;
    default:
        out.order = BilateralOrder::OuterFirst;
        break;
    }

    out.bilateral = bilateral_inverse(a, x1, g.pinv(), out.order, tol);
    out.distance = frobenius_distance(out.named.x, out.bilateral.x);
    out.pass = out.distance < tol.residual_threshold(std::max(out.named.x.norm(), a.norm()));
    return out;
}

ComplexMatrix core_ep_inverse(const ComplexMatrix& a, const ToleranceContext& tol)
{
    Ingredients g(a, tol);
    return g.core_ep();
}

} // namespace efinv
