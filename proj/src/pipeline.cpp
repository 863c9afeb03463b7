#include "kpalg/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <set>

#include "kpalg/error.hpp"

namespace kpalg {

namespace {

std::string where(const ConfigText& t) {
    return t.line ? " (line " + std::to_string(t.line) + ")" : std::string();
}

// Parse errors are moved to the text's position in the config; semantic
// errors get the offending string attached.
template <class F>
auto located(const ConfigText& t, F&& f) {
    try {
        return f(t.text);
    } catch (const ParseError& e) {
        throw e.relocated(t.column - 1, t.line);
    } catch (const SemanticError& e) {
        throw SemanticError(std::string(e.what()) + " in '" + t.text + "'" + where(t));
    }
}

std::size_t resolve_index(const std::string& token, const Scope& scope, const ConfigText& ctx) {
    if (auto idx = scope.index_of(token)) return *idx;
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec == std::errc() && p == token.data() + token.size()) {
        if (v >= 1 && v <= scope.size()) return v - 1;
        throw SemanticError("generator index " + token + " out of range" + where(ctx));
    }
    throw SemanticError("unknown generator '" + token + "'" + where(ctx));
}

RingPtr make_ring(const AlgebraConfig& cfg, std::optional<Poly>* levelset, const RingOptions& opts) {
    const auto n = cfg.generators.size();
    if (n > kMaxGens) throw ResourceError("at most " + std::to_string(kMaxGens) + " generators are supported");
    auto order = cfg.order == OrderKind::lex ? MonomialOrder::lex(n) : MonomialOrder::grevlex(n);
    auto scope = Scope::make(cfg.generators, std::move(order));
    std::vector<Poly> rels, dens;
    for (const auto& r : cfg.relations) rels.push_back(located(r, [&](const std::string& s) { return parse_poly(s, scope); }));
    if (cfg.levelset) {
        Poly C = located(*cfg.levelset, [&](const std::string& s) { return parse_poly(s, scope); });
        rels.push_back(C);
        *levelset = C;
    }
    for (const auto& d : cfg.denominators)
        dens.push_back(located(d, [&](const std::string& s) { return parse_poly(s, scope); }));
    return RingCtx::make(scope, std::move(rels), std::move(dens), opts);
}

std::string name_of(const RingPtr& ring, std::size_t i) { return ring->scope()->name(i); }

std::string key2(const std::string& base, const RingPtr& ring, std::size_t i, std::size_t j) {
    return base + "[" + name_of(ring, i) + "," + name_of(ring, j) + "]";
}

std::string idx2(const std::string& base, std::size_t i, std::size_t j) {
    return base + "[" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "]";
}

void emit_symmetric(Report& rep, const std::string& base, const RingMatrix& M) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = i; j < M.cols(); ++j) rep.value(key2(base, M.ctx(), i, j), M(i, j).str());
}

void emit_general(Report& rep, const std::string& base, const RingMatrix& M) {
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) rep.value(idx2(base, i, j), M(i, j).str());
}

std::string witness_str(const std::vector<std::size_t>& idx, const RingPtr& ring) {
    std::string s = "(";
    for (std::size_t k = 0; k < idx.size(); ++k) s += (k ? "," : "") + name_of(ring, idx[k]);
    return s + ")";
}

void emit_denominators(Report& rep, const RingPtr& ring) {
    std::string list;
    for (const auto& d : ring->denominators()) list += (list.empty() ? "" : ", ") + format_poly(d);
    rep.value("denominators", list.empty() ? "(none)" : list);
}

void require_jacobi(const BracketTable& P) {
    auto j = jacobi_check(P);
    if (!j.ok)
        throw VerificationError("the bracket is not Poisson: Jacobi fails at " +
                                witness_str({(*j.witness)[0], (*j.witness)[1], (*j.witness)[2]}, P.ctx()) +
                                " with residual " + j.residual->str());
}

KPSetup require_kp(const AlgebraConfig& cfg, const Algebra& alg) {
    require_jacobi(alg.P);
    KPSetup s = build_kp(cfg, alg);
    if (!cfg.defer_kp && !s.verify.ok)
        throw VerificationError("KP relation fails at " +
                                witness_str({s.verify.witness->first, s.verify.witness->second}, alg.ring) +
                                ": residual " + s.verify.residual->str());
    return s;
}

void report_kp_verify(Report& rep, const KPSetup& s) {
    if (s.verify.ok) {
        rep.check("kp-relation", true);
        return;
    }
    const auto& ring = s.kp->ring();
    rep.check("kp-relation", false,
              "residual at " + witness_str({s.verify.witness->first, s.verify.witness->second}, ring) + ": " +
                  s.verify.residual->str());
    const auto& R = *s.verify.residual_matrix;
    for (std::size_t i = 0; i < R.rows(); ++i)
        for (std::size_t j = 0; j < R.cols(); ++j)
            if (!R(i, j).is_zero()) rep.value(key2("residual", ring, i, j), R(i, j).str());
}

void add_poisson_checks(Report& rep, const Algebra& alg) {
    auto c = check_relations_central(alg.P);
    if (c.ok)
        rep.check("relations-central", true);
    else
        rep.check("relations-central", false,
                  "{" + name_of(alg.ring, *c.generator) + ", relation " + std::to_string(*c.relation + 1) +
                      "} = " + c.residual->str());
    auto j = jacobi_check(alg.P);
    if (j.ok)
        rep.check("jacobi", true);
    else
        rep.check("jacobi", false,
                  "witness " + witness_str({(*j.witness)[0], (*j.witness)[1], (*j.witness)[2]}, alg.ring) +
                      " residual " + j.residual->str());
}

Report cmd_jacobi(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("jacobi", cfg.source);
    add_poisson_checks(rep, alg);
    return rep;
}

bool block_shape_ok(const BlockDiagResult& bd) {
    const auto& Nf = bd.normal_form;
    const std::size_t n = Nf.rows();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            bool in_block = i / 2 == j / 2 && i != j && 2 * (i / 2) + 1 < n;
            if (in_block) {
                const Elem& l = bd.lambdas[i / 2];
                if (!(Nf(i, j) == (i < j ? l : -l))) return false;
            } else if (!Nf(i, j).is_zero()) {
                return false;
            }
        }
    return true;
}

Report cmd_blockdiag(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("blockdiag", cfg.source);
    auto bd = block_diagonalize(alg.P.matrix());
    rep.check("block-shape", block_shape_ok(bd));
    for (std::size_t k = 0; k < bd.lambdas.size(); ++k) rep.value("lambda_" + std::to_string(k + 1), bd.lambdas[k].str());
    rep.value("zero-block", bd.residual_zero_block ? "yes" : "no");
    emit_general(rep, "V", bd.V);
    emit_general(rep, "VtPV", bd.normal_form);
    return rep;
}

Report cmd_kp_check(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("kp-check", cfg.source);
    KPSetup s = build_kp(cfg, alg);
    report_kp_verify(rep, s);
    if (s.construction) emit_denominators(rep, s.kp->ring());
    rep.value("eta", s.kp->eta().str());
    emit_symmetric(rep, "D", s.kp->D());
    return rep;
}

Report cmd_construct(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("construct", cfg.source);
    auto j = jacobi_check(alg.P);
    rep.value("jacobi", j.ok ? "holds" : "fails at " + witness_str({(*j.witness)[0], (*j.witness)[1], (*j.witness)[2]}, alg.ring));
    // build_metric throws before returning if the identity fails.
    MetricConstruction mc = build_metric(alg.P.matrix());
    rep.check("det-identity", true, "det(V)^2 (PgPgP + lambda^2 P) = 0");
    auto verify = kp_verify(BracketTable(mc.P), mc.g, mc.eta);
    KPSetup s{KPCtx::make(BracketTable(mc.P), mc.g, mc.eta, true), std::nullopt, verify};
    report_kp_verify(rep, s);
    for (std::size_t k = 0; k < mc.lambdas.size(); ++k) rep.value("lambda_" + std::to_string(k + 1), mc.lambdas[k].str());
    rep.value("lambda", mc.lambda.str());
    rep.value("det(V)", mc.det_V.str());
    rep.value("eta", mc.eta.str());
    emit_denominators(rep, mc.ctx);
    emit_general(rep, "V", mc.V);
    emit_symmetric(rep, "g", mc.g);
    return rep;
}

Report cmd_christoffel(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("christoffel", cfg.source);
    Geometry geo(require_kp(cfg, alg).kp);
    const auto& ring = geo.kp().ring();
    const auto& G = geo.christoffel();
    for (std::size_t i = 0; i < geo.m(); ++i)
        for (std::size_t j = 0; j < geo.m(); ++j)
            for (std::size_t k = 0; k < geo.m(); ++k)
                rep.value("Gamma[" + name_of(ring, i) + "," + name_of(ring, j) + ";" + name_of(ring, k) + "]",
                          G.at({i, j, k}).str());
    return rep;
}

Report cmd_curvature(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("curvature", cfg.source);
    Geometry geo(require_kp(cfg, alg).kp);
    const auto& ring = geo.kp().ring();
    const auto& R = geo.riemann();
    const std::size_t m = geo.m();
    // R[i,j,k,l] = g(D^i, R(D^k, D^l) D^j); the rest follows by antisymmetry.
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = k + 1; l < m; ++l)
                    rep.value("R[" + name_of(ring, i) + "," + name_of(ring, j) + "," + name_of(ring, k) + "," +
                                  name_of(ring, l) + "]",
                              R.at({i, j, k, l}).str());
    return rep;
}

Report cmd_ricci(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("ricci", cfg.source);
    Geometry geo(require_kp(cfg, alg).kp);
    const auto& ring = geo.kp().ring();
    const auto& ric = geo.ricci();
    for (std::size_t p = 0; p < geo.m(); ++p)
        for (std::size_t q = p; q < geo.m(); ++q) rep.value(key2("Ric", ring, p, q), ric.at({p, q}).str());
    return rep;
}

Report cmd_scalar(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("scalar", cfg.source);
    Geometry geo(require_kp(cfg, alg).kp);
    rep.value("S", geo.scalar().str());
    return rep;
}

Report cmd_laplacian(const AlgebraConfig& cfg, const Algebra& alg, const RunOptions& opts) {
    if (!opts.expr) throw SemanticError("laplacian needs an expression argument");
    Report rep("laplacian", cfg.source);
    Geometry geo(require_kp(cfg, alg).kp);
    Elem f = located(ConfigText{*opts.expr, 0, 1},
                     [&](const std::string& s) { return parse_elem(s, geo.kp().ring()); });
    rep.value("f", f.str());
    rep.value("Delta(f)", geo.laplacian(f).str());
    return rep;
}

Report cmd_verify_all(const AlgebraConfig& cfg, const Algebra& alg) {
    Report rep("verify-all", cfg.source);
    add_poisson_checks(rep, alg);
    if (!rep.ok()) return rep;
    KPSetup s = build_kp(cfg, alg);
    report_kp_verify(rep, s);
    if (!rep.ok()) return rep;
    Geometry geo(s.kp);
    for (const auto& c : geo.verify_properties().checks) {
        std::string detail = std::to_string(c.checked) + " tuples";
        if (!c.ok)
            detail += ", " + std::to_string(c.failures) + " failing, worst at " + c.witness + ": " + c.residual->str();
        rep.check(c.name, c.ok, detail);
    }
    return rep;
}

}  // namespace

Algebra build_algebra(const AlgebraConfig& cfg, const RingOptions& opts) {
    std::optional<Poly> C;
    RingPtr ring = make_ring(cfg, &C, opts);
    const auto& scope = *ring->scope();
    if (C) {
        if (!cfg.brackets.empty()) throw SemanticError("'levelset' and explicit bracket entries are exclusive");
        return {ring, level_set_table(ring, *C)};
    }
    std::vector<std::tuple<std::size_t, std::size_t, Elem>> entries;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const auto& e : cfg.brackets) {
        std::size_t i = resolve_index(e.row, scope, e.value);
        std::size_t j = resolve_index(e.col, scope, e.value);
        if (i == j) throw SemanticError("bracket of a generator with itself is always 0" + where(e.value));
        Elem v = located(e.value, [&](const std::string& s) { return parse_elem(s, ring); });
        if (i > j) {
            std::swap(i, j);
            v = -v;
        }
        if (!seen.insert({i, j}).second)
            throw SemanticError("bracket {" + name_of(ring, i) + "," + name_of(ring, j) + "} given twice" +
                                where(e.value));
        entries.emplace_back(i, j, std::move(v));
    }
    return {ring, BracketTable::from_upper(ring, entries)};
}

KPSetup build_kp(const AlgebraConfig& cfg, const Algebra& alg) {
    const auto& ring = alg.ring;
    const std::size_t m = ring->ngens();
    if (cfg.metric == MetricMode::none) throw SemanticError("this command needs a metric");
    if (cfg.metric == MetricMode::construct) {
        if (cfg.eta) throw SemanticError("with 'metric: construct', eta is produced by the construction");
        MetricConstruction mc = build_metric(alg.P.matrix());
        BracketTable P(mc.P);
        auto verify = kp_verify(P, mc.g, mc.eta);
        auto kp = KPCtx::make(P, mc.g, mc.eta, true);
        return {kp, std::move(mc), std::move(verify)};
    }
    if (cfg.eta_construct) throw SemanticError("'eta: construct' requires 'metric: construct'");
    if (!cfg.eta) throw SemanticError("missing 'eta'");

    RingMatrix g = RingMatrix::identity(ring, m);
    if (cfg.metric == MetricMode::entries) {
        g = RingMatrix(ring, m, m);
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& e : cfg.metric_entries) {
            std::size_t i = resolve_index(e.row, *ring->scope(), e.value);
            std::size_t j = resolve_index(e.col, *ring->scope(), e.value);
            if (i > j) std::swap(i, j);
            if (!seen.insert({i, j}).second)
                throw SemanticError("metric entry (" + name_of(ring, i) + "," + name_of(ring, j) + ") given twice" +
                                    where(e.value));
            Elem v = located(e.value, [&](const std::string& s) { return parse_elem(s, ring); });
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    Elem eta = located(*cfg.eta, [&](const std::string& s) { return parse_elem(s, ring); });
    auto verify = kp_verify(alg.P, g, eta);
    return {KPCtx::make(alg.P, g, eta, true), std::nullopt, std::move(verify)};
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"jacobi", "kp-check", "blockdiag", "construct", "christoffel",
                                                "curvature", "ricci", "scalar", "laplacian", "verify-all"};
    return names;
}

Report run_command(const std::string& command, const AlgebraConfig& cfg, const RunOptions& opts) {
    RingOptions ro;
    ro.groebner.pair_budget = opts.pair_budget;
    Algebra alg = build_algebra(cfg, ro);
    if (command == "jacobi") return cmd_jacobi(cfg, alg);
    if (command == "kp-check") return cmd_kp_check(cfg, alg);
    if (command == "blockdiag") return cmd_blockdiag(cfg, alg);
    if (command == "construct") return cmd_construct(cfg, alg);
    if (command == "christoffel") return cmd_christoffel(cfg, alg);
    if (command == "curvature") return cmd_curvature(cfg, alg);
    if (command == "ricci") return cmd_ricci(cfg, alg);
    if (command == "scalar") return cmd_scalar(cfg, alg);
    if (command == "laplacian") return cmd_laplacian(cfg, alg, opts);
    if (command == "verify-all") return cmd_verify_all(cfg, alg);
    throw SemanticError("unknown command '" + command + "'");
}

}  // namespace kpalg
