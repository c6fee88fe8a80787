#include "job.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>

#include "efinv/efinv.hpp"

namespace efinv::cli {

namespace {

using json = nlohmann::ordered_json;

constexpr std::string_view kA[] = {"A"};
constexpr std::string_view kAts[] = {"A", "T", "S"};
constexpr std::string_view kAef[] = {"A", "E", "F"};
constexpr std::string_view kAefx[] = {"A", "E", "F", "X"};
constexpr std::string_view kAbc[] = {"A", "B", "C"};
constexpr std::string_view kAd[] = {"A", "D"};
constexpr std::string_view kAx12[] = {"A", "X1", "X2"};
constexpr std::string_view kTs[] = {"T", "S"};

const std::array<CommandInfo, 12> kCommands{{
    {Command::Pinv, "pinv", "Moore-Penrose inverse", kA, {}, false, false},
    {Command::Drazin, "drazin", "Drazin inverse", kA, {}, false, false},
    {Command::Group, "group", "group inverse (index <= 1)", kA, {}, false, false},
    {Command::Outer, "outer", "outer inverse with range span(T) and nullspace span(S)", kAts, {}, false, false},
    {Command::Ef, "ef", "EF-inverse E A^dagger F", kAef, {}, false, false},
    {Command::Crcr, "crcr", "(B,C)-inverse B (CAB)^dagger C", kAbc, {}, false, false},
    {Command::Mary, "mary", "inverse along D", kAd, {}, false, false},
    {Command::Bilateral, "bilateral", "bilateral inverse from X1 in A{2} and X2 in A{1}", kAx12, {}, false, true},
    {Command::Catalog, "catalog", "named composite inverse", kA, kTs, true, false},
    {Command::Exists, "exists", "EF-inverse existence report", kAef, {}, false, false},
    {Command::Verify, "verify", "certify X as the EF-inverse", kAefx, {}, false, false},
    {Command::Canonical, "canonical", "EF-inverse through the SVD block form", kAef, {}, false, false},
}};

std::string hex(std::uint64_t v)
{
    char buf[19];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

json check_json(const ResidualCheck& c)
{
    return {{"label", c.label}, {"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}};
}

ResidualCheck check(std::string label, const ComplexMatrix& lhs, const ComplexMatrix& rhs, const ToleranceContext& tol)
{
    const double r = (lhs - rhs).norm();
    const double t = tol.residual_threshold(lhs.norm());
    return {std::move(label), r, t, r < t};
}

std::vector<ResidualCheck> certificate_checks(const Certificate& c)
{
    return {{"XAX=X", c.outer_residual, c.threshold, c.outer_residual < c.threshold},
            {"XA=E", c.left_residual, c.threshold, c.left_residual < c.threshold},
            {"AX=F", c.right_residual, c.threshold, c.right_residual < c.threshold}};
}

json existence_json(const ExistenceReport& r)
{
    json checks = json::object();
    for (const auto& c : r.checks)
        checks[c.label] = {{"residual", c.residual}, {"threshold", c.threshold}, {"pass", c.pass}};
    json clauses = json::object();
    for (const auto& cl : r.clauses) {
        json items = json::array();
        for (const auto& i : cl.items)
            items.push_back(check_json(i));
        clauses[cl.clause] = {{"pass", cl.pass}, {"items", std::move(items)}};
    }
    return {{"exists", r.exists},
            {"witness_path", r.witness_path},
            {"clauses_agree", r.clauses_agree},
            {"checks", std::move(checks)},
            {"clauses", std::move(clauses)}};
}

// What a command produced, before it is turned into a report.
struct Outcome {
    std::optional<ComplexMatrix> x;
    std::vector<ResidualCheck> checks;
    json existence;
    json details = json::object();
    int exit_code = kExitOk;
    std::string error;
};

class Inputs {
public:
    explicit Inputs(const JobSpec& job) : job_(job) {}

    const ComplexMatrix& get(const std::string& key)
    {
        auto it = cache_.find(key);
        if (it != cache_.end())
            return it->second;
        const auto path = job_.inputs.find(key);
        if (path == job_.inputs.end())
            throw UsageError("missing input --" + key);
        return cache_.emplace(key, load_matrix(path->second)).first->second;
    }

    bool has(const std::string& key) const { return job_.inputs.count(key) > 0; }
    const std::map<std::string, ComplexMatrix>& loaded() const { return cache_; }

private:
    const JobSpec& job_;
    std::map<std::string, ComplexMatrix> cache_;
};

std::vector<ResidualCheck> penrose_checks(const ComplexMatrix& a, const ComplexMatrix& x, const ToleranceContext& tol)
{
    const ComplexMatrix ax = a * x, xa = x * a;
    return {check("AXA=A", ax * a, a, tol), check("XAX=X", xa * x, x, tol), check("(AX)*=AX", ax.adjoint(), ax, tol),
            check("(XA)*=XA", xa.adjoint(), xa, tol)};
}

std::vector<ResidualCheck> drazin_checks(const ComplexMatrix& a, const ComplexMatrix& x, int k,
                                         const ToleranceContext& tol)
{
    const ComplexMatrix ak = matrix_power(a, k);
    return {check("XAX=X", x * a * x, x, tol), check("AX=XA", a * x, x * a, tol),
            check("A^(k+1)X=A^k", a * ak * x, ak, tol)};
}

Outcome run_pinv(Inputs& in, const ToleranceContext& tol)
{
    const ComplexMatrix& a = in.get("A");
    Outcome o;
    o.x = moore_penrose(a, tol);
    o.checks = penrose_checks(a, *o.x, tol);
    o.details["rank"] = numerical_rank(a, tol);
    return o;
}

Outcome run_drazin(Inputs& in, const ToleranceContext& tol, bool group)
{
    const ComplexMatrix& a = in.get("A");
    require_square(a, group ? "group" : "drazin");
    Outcome o;
    const int k = matrix_index(a, tol);
    o.details["index"] = k;
    o.x = group ? group_inverse(a, tol) : drazin(a, tol);
    o.checks = drazin_checks(a, *o.x, k, tol);
    return o;
}

Outcome run_outer(Inputs& in, const ToleranceContext& tol)
{
    const ComplexMatrix& a = in.get("A");
    const Subspace t = Subspace::span_of(in.get("T"), tol);
    const Subspace s = Subspace::span_of(in.get("S"), tol);
    Outcome o;
    o.details["dim_T"] = t.dim();
    o.details["dim_S"] = s.dim();
    o.x = outer_prescribed(a, t, s, tol);
    const OuterResiduals r = outer_prescribed_residuals(a, t, s, *o.x, tol);
    const double thr = tol.residual_threshold(o.x->norm() * a.norm());
    o.checks = {{"XAX=X", r.outer, thr, r.outer < thr},
                {"XA=P_{T,(A*(S^perp))^perp}", r.xa_projector, thr, r.xa_projector < thr},
                {"AX=P_{AT,S}", r.ax_projector, thr, r.ax_projector < thr}};
    return o;
}

Outcome run_ef(Inputs& in, const ToleranceContext& tol)
{
    const ComplexMatrix &a = in.get("A"), &e = in.get("E"), &f = in.get("F");
    Outcome o;
    const ExistenceReport rep = ef_exists(a, e, f, tol);
    o.existence = existence_json(rep);
    if (!rep.exists) {
        o.exit_code = kExitNotExistent;
        o.error = "A^(E,F) does not exist";
        return o;
    }
    o.x = ef_inverse(a, e, f, tol);
    o.checks = certificate_checks(ef_verify(a, e, f, *o.x, tol));
    return o;
}

Outcome run_exists(Inputs& in, const ToleranceContext& tol)
{
    const ExistenceReport rep = ef_exists(in.get("A"), in.get("E"), in.get("F"), tol);
    Outcome o;
    o.existence = existence_json(rep);
    if (!rep.exists) {
        o.exit_code = kExitNotExistent;
        o.error = "A^(E,F) does not exist";
    }
    return o;
}

Outcome run_verify(Inputs& in, const ToleranceContext& tol)
{
    const ComplexMatrix &a = in.get("A"), &e = in.get("E"), &f = in.get("F"), &x = in.get("X");
    Outcome o;
    o.existence = existence_json(ef_exists(a, e, f, tol));
    o.checks = certificate_checks(ef_verify(a, e, f, x, tol));
    return o;
}

Outcome run_canonical(Inputs& in, const ToleranceContext& tol)
{
    const ComplexMatrix &a = in.get("A"), &e = in.get("E"), &f = in.get("F");
    Outcome o;
    const CanonicalBlocks blocks = canonical_blocks(a, e, f, tol);
    json conditions = json::array();
    for (const auto& c : blocks.conditions)
        conditions.push_back(check_json(c));
    o.details["rank"] = blocks.svd.rank;
    o.details["block_conditions"] = std::move(conditions);
    o.x = ef_canonical_form(a, e, f, tol);
    o.checks = certificate_checks(ef_verify(a, e, f, *o.x, tol));
    return o;
}

void add_bc_checks(Outcome& o, const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                   const ToleranceContext& tol)
{
    const BcResiduals r = bc_residuals(a, b, c, *o.x, tol);
    const double thr_b = tol.residual_threshold(b.norm()), thr_c = tol.residual_threshold(c.norm());
    o.checks = {{"XAB=B", r.xab, thr_b, r.xab < thr_b},
                {"CAX=C", r.cax, thr_c, r.cax < thr_c},
                {"R(X) in R(B)", r.range_x, tol.residual_tol, r.range_x < tol.residual_tol},
                {"R(X*) in R(C*)", r.range_x_adj, tol.residual_tol, r.range_x_adj < tol.residual_tol}};
    const ProjectorPair ef = bc_to_ef(a, b, c, tol);
    for (auto& chk : certificate_checks(ef_verify(a, ef.e, ef.f, *o.x, tol)))
        o.checks.push_back(std::move(chk));
}

Outcome run_crcr(Inputs& in, const ToleranceContext& tol, bool mary)
{
    const ComplexMatrix& a = in.get("A");
    const ComplexMatrix& b = in.get(mary ? "D" : "B");
    const ComplexMatrix& c = in.get(mary ? "D" : "C");
    Outcome o;
    o.x = mary ? mary_inverse(a, b, tol) : crcr_inverse(a, b, c, tol);
    add_bc_checks(o, a, b, c, tol);
    return o;
}

Outcome run_bilateral(Inputs& in, const JobSpec& job, const ToleranceContext& tol)
{
    const BilateralOrder order = parse_bilateral_order(job.order.value_or("outer-first"));
    const BilateralResult r = bilateral_inverse(in.get("A"), in.get("X1"), in.get("X2"), order, tol);
    Outcome o;
    o.x = r.x;
    o.checks = certificate_checks(r.certificate);
    o.details["order"] = std::string(to_string(order));
    o.details["E_checksum"] = hex(matrix_checksum(r.e));
    o.details["F_checksum"] = hex(matrix_checksum(r.f));
    return o;
}

Outcome run_catalog(Inputs& in, const JobSpec& job, const ToleranceContext& tol)
{
    const ComplexMatrix& a = in.get("A");
    CatalogEntry entry;
    entry.name = parse_inverse_name(*job.name);
    entry.m = job.m;
    if (in.has("T"))
        entry.t = Subspace::span_of(in.get("T"), tol);
    if (in.has("S"))
        entry.s = Subspace::span_of(in.get("S"), tol);
    const CatalogResult r = named_inverse(a, entry, tol);
    Outcome o;
    o.x = r.x;
    o.checks = certificate_checks(r.certificate);
    for (const auto& c : r.extra)
        o.checks.push_back(c);
    o.details["name"] = std::string(canonical_name(entry.name));
    o.details["formula"] = r.formula_id;
    o.details["bilateral"] = r.bilateral;
    if (r.index)
        o.details["index"] = *r.index;
    o.details["E_checksum"] = hex(matrix_checksum(r.e));
    o.details["F_checksum"] = hex(matrix_checksum(r.f));
    return o;
}

Outcome dispatch(const JobSpec& job, Inputs& in, const ToleranceContext& tol)
{
    switch (job.command) {
    case Command::Pinv: return run_pinv(in, tol);
    case Command::Drazin: return run_drazin(in, tol, false);
    case Command::Group: return run_drazin(in, tol, true);
    case Command::Outer: return run_outer(in, tol);
    case Command::Ef: return run_ef(in, tol);
    case Command::Crcr: return run_crcr(in, tol, false);
    case Command::Mary: return run_crcr(in, tol, true);
    case Command::Bilateral: return run_bilateral(in, job, tol);
    case Command::Catalog: return run_catalog(in, job, tol);
    case Command::Exists: return run_exists(in, tol);
    case Command::Verify: return run_verify(in, tol);
    case Command::Canonical: return run_canonical(in, tol);
    }
    throw UsageError("unknown command");
}

// Maps library exceptions onto the exit-code contract.
Outcome guarded(const JobSpec& job, Inputs& in, const ToleranceContext& tol)
{
    Outcome o;
    try {
        return dispatch(job, in, tol);
    } catch (const EfNotExistent& e) {
        o.existence = existence_json(e.report());
        o.exit_code = kExitNotExistent;
        o.error = e.what();
    } catch (const RankConditionFailure& e) {
        o.details["rank_CAB"] = e.rank_cab();
        o.details["rank_C"] = e.rank_c();
        o.details["rank_B"] = e.rank_b();
        o.exit_code = kExitNotExistent;
        o.error = e.what();
    } catch (const IndexTooLarge& e) {
        o.details["index"] = e.index();
        o.exit_code = kExitNotExistent;
        o.error = e.what();
    } catch (const NotExistent& e) {
        o.details["violated"] = e.violated();
        o.exit_code = kExitNotExistent;
        o.error = e.what();
    } catch (const NotComplementary& e) {
        o.exit_code = kExitNotExistent;
        o.error = e.what();
    } catch (const NotOuter& e) {
        o.exit_code = kExitVerification;
        o.error = e.what();
    } catch (const NotInner& e) {
        o.exit_code = kExitVerification;
        o.error = e.what();
    } catch (const FactorizationFailure& e) {
        o.exit_code = kExitVerification;
        o.error = e.what();
    } catch (const std::exception& e) {
        o.exit_code = kExitUsage;
        o.error = e.what();
    }
    return o;
}

std::string_view status_of(int code)
{
    switch (code) {
    case kExitOk: return "ok";
    case kExitUsage: return "usage_error";
    case kExitNotExistent: return "not_existent";
    default: return "verification_failed";
    }
}

json job_json(const JobSpec& job)
{
    json inputs = json::object();
    for (const auto& [k, v] : job.inputs)
        inputs[k] = v.string();
    json params = json::object();
    if (job.name)
        params["name"] = *job.name;
    if (job.m)
        params["m"] = *job.m;
    if (job.order)
        params["order"] = *job.order;
    return {{"command", std::string(command_info(job.command).name)}, {"inputs", inputs}, {"params", params}};
}

std::filesystem::path result_path(const JobSpec& job)
{
    if (job.output)
        return job.output->string() + ".result.mtx";
    return "efinv_result.mtx";
}

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

double parse_double(std::string_view text, const char* what)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw UsageError(std::string(what) + ": cannot parse '" + std::string(text) + "' as a number");
    return v;
}

} // namespace

std::span<const CommandInfo> all_commands()
{
    return kCommands;
}

const CommandInfo& command_info(Command command)
{
    for (const auto& c : kCommands)
        if (c.command == command)
            return c;
    throw UsageError("unknown command");
}

Command parse_command(std::string_view text)
{
    for (const auto& c : kCommands)
        if (c.name == text)
            return c.command;
    throw UsageError("unknown command '" + std::string(text) + "'");
}

void JobSpec::validate() const
{
    const CommandInfo& info = command_info(command);
    for (auto key : info.required)
        if (!inputs.count(std::string(key)))
            throw UsageError(std::string(info.name) + ": missing input --" + std::string(key));
    for (const auto& [key, path] : inputs) {
        const bool known = std::find(info.required.begin(), info.required.end(), key) != info.required.end() ||
                           std::find(info.optional.begin(), info.optional.end(), key) != info.optional.end();
        if (!known)
            throw UsageError(std::string(info.name) + ": unexpected input --" + key);
        if (path.empty())
            throw UsageError(std::string(info.name) + ": empty path for --" + key);
    }
    if (info.takes_name_and_m && !name)
        throw UsageError(std::string(info.name) + ": missing --name");
    if (!info.takes_name_and_m && (name || m))
        throw UsageError(std::string(info.name) + ": --name and --m apply to catalog only");
    if (!info.takes_order && order)
        throw UsageError(std::string(info.name) + ": --order applies to bilateral only");
    if (inputs.count("T") != inputs.count("S"))
        throw UsageError(std::string(info.name) + ": --T and --S must be given together");
    for (const auto& v : {tol.rank_rel_tol, tol.residual_tol, tol.idempotency_tol})
        if (v && !(*v >= 0.0))
            throw UsageError("tolerances must be nonnegative");
}

JobSpec parse_job_json(std::string_view text, const std::filesystem::path& base_dir)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw UsageError(std::string("job file: ") + e.what());
    }
    if (!j.is_object())
        throw UsageError("job file: top level must be an object");

    auto require_keys = [](const json& obj, std::initializer_list<std::string_view> allowed, const char* where) {
        if (!obj.is_object())
            throw UsageError(std::string("job file: ") + where + " must be an object");
        for (const auto& [k, v] : obj.items())
            if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
                throw UsageError(std::string("job file: unknown key '") + k + "' in " + where);
    };
    require_keys(j, {"command", "inputs", "params", "tolerance", "output"}, "job");

    JobSpec job;
    try {
        if (!j.contains("command"))
            throw UsageError("job file: missing 'command'");
        job.command = parse_command(j.at("command").get<std::string>());
        auto resolve = [&](const std::string& p) {
            std::filesystem::path path(p);
            return path.is_relative() && !base_dir.empty() ? base_dir / path : path;
        };
        if (j.contains("inputs")) {
            require_keys(j["inputs"], {"A", "B", "C", "D", "E", "F", "X", "X1", "X2", "T", "S"}, "inputs");
            for (const auto& [k, v] : j["inputs"].items())
                job.inputs[k] = resolve(v.get<std::string>());
        }
        if (j.contains("params")) {
            require_keys(j["params"], {"name", "m", "order"}, "params");
            const json& p = j["params"];
            if (p.contains("name"))
                job.name = p["name"].get<std::string>();
            if (p.contains("m"))
                job.m = p["m"].get<int>();
            if (p.contains("order"))
                job.order = p["order"].get<std::string>();
        }
        if (j.contains("tolerance")) {
            require_keys(j["tolerance"], {"rank_rel_tol", "residual_tol", "idempotency_tol"}, "tolerance");
            const json& t = j["tolerance"];
            if (t.contains("rank_rel_tol"))
                job.tol.rank_rel_tol = t["rank_rel_tol"].get<double>();
            if (t.contains("residual_tol"))
                job.tol.residual_tol = t["residual_tol"].get<double>();
            if (t.contains("idempotency_tol"))
                job.tol.idempotency_tol = t["idempotency_tol"].get<double>();
        }
        if (j.contains("output"))
            job.output = resolve(j["output"].get<std::string>());
    } catch (const json::exception& e) {
        throw UsageError(std::string("job file: ") + e.what());
    }
    job.validate();
    return job;
}

ToleranceContext resolve_tolerance(const ToleranceOverrides& overrides, const char* env_tol)
{
    ToleranceContext tol;
    if (env_tol && *env_tol)
        tol.residual_tol = parse_double(env_tol, "EFINV_TOL");
    if (overrides.rank_rel_tol)
        tol.rank_rel_tol = *overrides.rank_rel_tol;
    if (overrides.residual_tol)
        tol.residual_tol = *overrides.residual_tol;
    if (overrides.idempotency_tol)
        tol.idempotency_tol = *overrides.idempotency_tol;
    try {
        tol.validate();
    } catch (const BadParams& e) {
        throw UsageError(e.what());
    }
    return tol;
}

Report run(const JobSpec& job, const char* env_tol)
{
    const auto start = std::chrono::steady_clock::now();
    Report report;
    json& out = report.json;
    out["tool"] = "efinv";
    out["version"] = kVersion;
    out["job"] = job_json(job);

    Inputs in(job);
    Outcome o;
    try {
        job.validate();
        const ToleranceContext tol = resolve_tolerance(job.tol, env_tol);
        out["tolerance"] = {{"rank_rel_tol", tol.rank_rel_tol ? json(*tol.rank_rel_tol) : json("max(m,n)*eps")},
                            {"residual_tol", tol.residual_tol},
                            {"idempotency_tol", tol.idempotency_tol}};
        o = guarded(job, in, tol);
    } catch (const std::exception& e) {
        o.exit_code = kExitUsage;
        o.error = e.what();
    }

    json digests = json::object();
    for (const auto& [k, m] : in.loaded())
        digests[k] = {{"path", job.inputs.at(k).string()},
                      {"rows", m.rows()},
                      {"cols", m.cols()},
                      {"checksum", hex(matrix_checksum(m))}};
    out["inputs"] = std::move(digests);

    bool all_pass = true;
    json checks = json::array();
    for (const auto& c : o.checks) {
        checks.push_back(check_json(c));
        all_pass = all_pass && c.pass;
    }
    if (!o.checks.empty())
        out["certificate"] = {{"pass", all_pass}, {"checks", std::move(checks)}};
    if (!all_pass && o.exit_code == kExitOk) {
        o.exit_code = kExitVerification;
        o.error = "certificate failed";
    }
    if (!o.existence.is_null())
        out["existence"] = o.existence;
    if (!o.details.empty())
        out["details"] = o.details;

    if (o.x) {
        const ComplexMatrix& x = *o.x;
        const auto entries = static_cast<std::size_t>(x.rows()) * static_cast<std::size_t>(x.cols());
        json result;
        if (entries <= job.inline_limit) {
            result = json::parse(to_json_matrix(x));
        } else {
            const auto path = result_path(job);
            save_matrix(path, x, MatrixFormat::MatrixMarket);
            result = {{"file", path.string()}, {"rows", x.rows()}, {"cols", x.cols()}};
        }
        result["checksum"] = hex(matrix_checksum(x));
        out["result"] = std::move(result);
    } else {
        out["result"] = nullptr;
    }

    report.exit_code = o.exit_code;
    out["status"] = std::string(status_of(o.exit_code));
    out["exit_code"] = o.exit_code;
    if (!o.error.empty())
        out["error"] = o.error;
    out["elapsed_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    std::ostringstream s;
    s << "efinv " << command_info(job.command).name << ": " << status_of(o.exit_code) << " (exit " << o.exit_code
      << ")\n";
    if (!o.error.empty())
        s << "  error: " << o.error << "\n";
    if (!o.existence.is_null())
        for (const auto& [label, c] : o.existence["checks"].items())
            s << "  exists." << label << "  residual " << format_double(c["residual"].get<double>())
              << "  threshold " << format_double(c["threshold"].get<double>())
              << (c["pass"].get<bool>() ? "  pass" : "  FAIL") << "\n";
    for (const auto& c : o.checks)
        s << "  " << c.label << "  residual " << format_double(c.residual) << "  threshold "
          << format_double(c.threshold) << (c.pass ? "  pass" : "  FAIL") << "\n";
    report.summary = s.str();
    return report;
}

} // namespace efinv::cli
