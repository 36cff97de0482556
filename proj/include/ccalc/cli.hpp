#pragma once

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ccalc/expr.hpp"
#include "ccalc/workspace.hpp"

namespace ccalc {

namespace cli {

struct Options {
    uint32_t prime = 2;
    bool char_p = false;
    std::string format = "text";
    std::string workspace_path;
    bool verbose = false;

    Mode mode() const { return char_p ? Mode::PurePoint : Mode::WeightUnit; }
};

inline std::string default_workspace_path() {
    if (const char* env = std::getenv("CCALC_WORKSPACE")) return env;
    return "ccalc.workspace.json";
}

/// Evaluate a one-variable series expression (polynomial in u) exactly.
inline Series series_from_expr(const std::string& text, uint32_t prime, int order) {
    ExprPtr e = parse_expr(text);
    std::function<Series(const ExprPtr&)> ev = [&](const ExprPtr& n) -> Series {
        switch (n->kind) {
            case ExprNode::Kind::Num: return Series::constant(prime, order, n->num);
            case ExprNode::Kind::Var:
                if (n->name == "u") {
                    Series s(prime, order);
                    s.set_coeff(1, Fp(prime, 1));
                    return s;
                }
                throw usage_error("series may only use the variable u");
            case ExprNode::Kind::Add: return ev(n->a) + ev(n->b);
            case ExprNode::Kind::Sub: return ev(n->a) - ev(n->b);
            case ExprNode::Kind::Mul: return ev(n->a) * ev(n->b);
            case ExprNode::Kind::Pow: {
                Series base = ev(n->a);
                Series acc = Series::constant(prime, order, 1);
                for (long k = 0; k < n->num; ++k) acc = acc * base;
                return acc;
            }
            case ExprNode::Kind::Neg: return Series::constant(prime, order, 0) - ev(n->a);
            default: throw usage_error("series expressions allow only + - * ^");
        }
    };
    return ev(e);
}

inline Operation op_from_name(const std::string& name, const Options& opt) {
    if (name == "qmodl") {
        if (opt.char_p)
            throw usage_error("qmodl acts away from the ambient characteristic; "
                              "drop --char-p");
        return steenrod_total(OpMode::QmodL, opt.prime);
    }
    if (name == "qmodp") {
        if (!opt.char_p) throw usage_error("qmodp needs --char-p (the l = p picture)");
        return steenrod_total(OpMode::QmodP, opt.prime);
    }
    if (name == "pmotivic") return steenrod_total(OpMode::Pmotivic, opt.prime);
    if (name == "identity") return steenrod_total(OpMode::Identity, opt.prime);
    if (name.rfind("custom:", 0) == 0) {
        Series s = series_from_expr(name.substr(7), opt.prime, 32);
        std::vector<Fp> coeffs;
        for (int k = 0; k <= s.order(); ++k) coeffs.push_back(s.coeff(k));
        while (coeffs.size() > 1 && coeffs.back().is_zero()) coeffs.pop_back();
        return custom_operation(opt.prime, std::move(coeffs), opt.char_p);
    }
    throw usage_error("unknown operation '" + name +
                      "' (presets: qmodl, qmodp, pmotivic, identity, custom:<series>)");
}

inline void print_reports(const std::vector<Report>& reports, const Options& opt,
                          std::ostream& out) {
    if (opt.format == "json") {
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(report_to_json(r));
        out << arr.dump(2) << "\n";
        return;
    }
    int failed = 0;
    for (const auto& r : reports) {
        out << r.summary() << "\n";
        if (opt.verbose || !r.pass) {
            out << "  lhs: " << r.lhs << "\n";
            out << "  rhs: " << r.rhs << "\n";
        }
        for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
        if (opt.verbose)
            for (const auto& t : r.trace) out << "  | " << t << "\n";
        if (!r.pass) ++failed;
    }
    out << reports.size() << " checks, " << failed << " failed\n";
}

inline void print_value(const std::string& value, const Options& opt, std::ostream& out) {
    if (opt.format == "json")
        out << json{{"result", value}}.dump(2) << "\n";
    else
        out << value << "\n";
}

inline void show_space(const SpacePtr& s, const Options& opt, std::ostream& out) {
    if (opt.format == "json") {
        json bidegrees = json::array();
        for (auto bd : s->ring->occupied_bidegrees()) {
            json basis = json::array();
            for (const Mon& m : s->ring->basis(bd))
                basis.push_back(Elem::monomial(s->ring, m, Fp(s->prime, 1)).str());
            bidegrees.push_back(json{{"i", bd.first},
                                     {"j", bd.second},
                                     {"dim", s->ring->dim(bd)},
                                     {"basis", basis}});
        }
        json j = space_to_json(s);
        j["dim"] = s->dim;
        j["name"] = s->name;
        j["bidegrees"] = bidegrees;
        out << j.dump(2) << "\n";
        return;
    }
    out << "space " << s->name << "  (l=" << s->prime << ", mode=" << mode_str(s->mode)
        << ", dim=" << s->dim << ")\n";
    if (s->ring->has_theta())
        out << "  weight unit th adjoined: invertible, bidegree (0,1); "
               "tables list the th-free slices\n";
    for (auto bd : s->ring->occupied_bidegrees()) {
        out << "  (" << bd.first << "," << bd.second << "): ";
        bool first = true;
        for (const Mon& m : s->ring->basis(bd)) {
            if (!first) out << " ";
            first = false;
            out << Elem::monomial(s->ring, m, Fp(s->prime, 1)).str();
        }
        out << "\n";
    }
    if (s->tangent)
        out << "  tangent: rank " << s->tangent->rank() << ", c = "
            << s->tangent->total_chern().str() << "\n";
}

} // namespace cli

/// Entry point shared by the binary and the tests.  Returns the exit code:
/// 0 all checks pass / computation done, 1 a verdict failed, 2 usage errors.
inline int run_subcommand(std::vector<std::string> args, std::ostream& out,
                          std::ostream& err) {
    cli::Options opt;
    opt.workspace_path = cli::default_workspace_path();

    CLI::App app{"exact characteristic-class calculus over F_l"};
    app.fallthrough();
    app.add_option("--prime", opt.prime, "coefficient prime l");
    app.add_flag("--char-p", opt.char_p, "work in the l = p picture (pure point coefficients)");
    app.add_option("--format", opt.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--workspace", opt.workspace_path, "workspace file path");
    app.add_flag("--verbose", opt.verbose, "print full traces");

    // space
    auto* sp = app.add_subcommand("space", "space catalog");
    std::string sp_name, sp_desc;
    auto* sp_show = sp->add_subcommand("show", "print per-bidegree basis tables");
    sp_show->add_option("--space", sp_name)->required();
    auto* sp_add = sp->add_subcommand("add", "store a named space in the workspace");
    sp_add->add_option("--name", sp_name)->required();
    sp_add->add_option("--desc", sp_desc, "catalog name, e.g. P2, Gr(2,4), P1xP2")->required();

    // bundle
    auto* bu = app.add_subcommand("bundle", "formal vector bundles");
    std::string bu_name, bu_space, bu_chern;
    int bu_rank = 0;
    auto* bu_add = bu->add_subcommand("add", "store a named bundle in the workspace");
    bu_add->add_option("--name", bu_name)->required();
    bu_add->add_option("--space", bu_space)->required();
    bu_add->add_option("--rank", bu_rank)->required();
    bu_add->add_option("--chern", bu_chern, "total Chern class expression")->required();
    auto* bu_show = bu->add_subcommand("show", "print a stored bundle");
    bu_show->add_option("--name", bu_name)->required();

    // genus
    auto* ge = app.add_subcommand("genus", "multiplicative genera");
    std::string ge_op, ge_series, ge_bundle, ge_kind = "itd";
    auto* ge_eval = ge->add_subcommand("eval", "evaluate a genus on a bundle");
    ge_eval->add_option("--op", ge_op, "operation preset");
    ge_eval->add_option("--series", ge_series, "explicit characteristic series in u");
    ge_eval->add_option("--kind", ge_kind, "itd|td (with --op)")
        ->check(CLI::IsMember({"itd", "td"}));
    ge_eval->add_option("--bundle", ge_bundle)->required();

    // op
    auto* op = app.add_subcommand("op", "ring operations");
    std::string op_name, op_space, op_expr, op_embedding;
    auto* op_apply = op->add_subcommand("apply", "apply an operation to an expression");
    op_apply->add_option("--op", op_name)->required();
    op_apply->add_option("--space", op_space);
    op_apply->add_option("--expr", op_expr)->required();
    op_apply->add_option("--embedding", op_embedding,
                         "evaluate in the Thom module of this embedding");

    // push
    auto* pu = app.add_subcommand("push", "proper pushforward along a map");
    std::string pu_map, pu_expr;
    pu->add_option("--map", pu_map)->required();
    pu->add_option("--expr", pu_expr)->required();

    // map
    auto* mp = app.add_subcommand("map", "proper map registry");
    std::string mp_name, mp_json;
    auto* mp_add = mp->add_subcommand("add", "store a map descriptor (JSON)");
    mp_add->add_option("--name", mp_name)->required();
    mp_add->add_option("--json", mp_json, "map descriptor document")->required();

    // verify
    auto* ve = app.add_subcommand("verify", "theorem checkers");
    std::string ve_embedding = "P1_in_P2", ve_map = "P2_to_pt", ve_op, ve_a;
    int ve_s = -1, ve_n = 2, ve_degree = 1, ve_maxdim = 4;
    auto* ve_wu = ve->add_subcommand("wu", "relative Wu formula");
    ve_wu->add_option("--embedding", ve_embedding);
    ve_wu->add_option("--op", ve_op);
    ve_wu->add_option("--a", ve_a, "class to push (default: every basis class)");
    auto* ve_grr = ve->add_subcommand("grr", "Riemann-Roch formula");
    ve_grr->add_option("--map", ve_map);
    ve_grr->add_option("--op", ve_op);
    ve_grr->add_option("--a", ve_a);
    auto* ve_van = ve->add_subcommand("vanishing", "beta phi^s on Thom classes");
    ve_van->add_option("--embedding", ve_embedding);
    ve_van->add_option("--op", ve_op);
    ve_van->add_option("--s", ve_s);
    auto* ve_tr = ve->add_subcommand("transfer", "resolution/alteration transfer");
    ve_tr->add_option("--op", ve_op);
    ve_tr->add_option("--degree", ve_degree);
    auto* ve_deg = ve->add_subcommand("degree", "degree-reasons vanishing");
    ve_deg->add_option("--n", ve_n)->required();
    ve_deg->add_option("--s", ve_s)->required();
    auto* ve_bo = ve->add_subcommand("bockstein", "beta commutes with pushforward");
    ve_bo->add_option("--map", ve_map);
    ve_bo->add_option("--a", ve_a);
    auto* ve_all = ve->add_subcommand("all", "the full suite");
    ve_all->add_option("--max-dim", ve_maxdim);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        Workspace ws = Workspace::load_or_create(opt.workspace_path);
        opt.prime = app.count("--prime") ? opt.prime : ws.default_prime(opt.prime);
        const Mode mode = opt.mode();

        auto resolve_space = [&](const std::string& name) {
            return ws.space(name, opt.prime, mode);
        };
        auto default_op = [&]() -> std::string {
            return opt.char_p ? "qmodp" : "qmodl";
        };

        if (sp_show->parsed()) {
            cli::show_space(resolve_space(sp_name), opt, out);
            return 0;
        }
        if (sp_add->parsed()) {
            ws.add_space(sp_name, resolve_space(sp_desc));
            ws.save(opt.workspace_path);
            out << "stored space " << sp_name << "\n";
            return 0;
        }
        if (bu_add->parsed()) {
            SpacePtr base = resolve_space(bu_space);
            EvalContext ctx;
            ctx.space = base;
            ctx.prime = opt.prime;
            ExprValue v = eval_expr(parse_expr(bu_chern), ctx);
            if (v.is_supported()) throw usage_error("a Chern class cannot contain tau");
            ws.add_bundle(bu_name, base, Bundle(bu_rank, *v.plain, bu_name));
            ws.save(opt.workspace_path);
            out << "stored bundle " << bu_name << "\n";
            return 0;
        }
        if (bu_show->parsed()) {
            auto [base, b] = ws.bundle_with_space(bu_name);
            cli::print_value("rank " + std::to_string(b.rank()) + " over " + base->name +
                                 ", c = " + b.total_chern().str(),
                             opt, out);
            return 0;
        }
        if (ge_eval->parsed()) {
            auto [base, bundle] = ws.bundle_with_space(ge_bundle);
            Genus g = [&]() {
                if (!ge_series.empty())
                    return Genus(opt.prime,
                                 [&] {
                                     Series s = cli::series_from_expr(ge_series, opt.prime,
                                                                      32);
                                     std::vector<Fp> c;
                                     for (int k = 0; k <= s.order(); ++k)
                                         c.push_back(s.coeff(k));
                                     return c;
                                 }(),
                                 false, "series");
                if (ge_op.empty())
                    throw usage_error("genus eval needs --op or --series");
                Operation o = cli::op_from_name(ge_op, opt);
                return ge_kind == "td" ? todd_of_operation(o)
                                       : inverse_todd_of_operation(o);
            }();
            cli::print_value(evaluate_genus(g, bundle).str(), opt, out);
            return 0;
        }
        if (op_apply->parsed()) {
            Operation o = cli::op_from_name(op_name, opt);
            EvalContext ctx;
            ctx.prime = opt.prime;
            if (!op_embedding.empty()) {
                EmbeddingData e = ws.embedding(op_embedding, opt.prime, mode);
                ctx.thom = thom_module(e);
                ctx.space = ctx.thom->ambient();
                ctx.bundles.emplace("N", e.normal);
            } else {
                if (op_space.empty()) throw usage_error("op apply needs --space or --embedding");
                ctx.space = resolve_space(op_space);
            }
            ExprValue v = eval_expr(parse_expr(op_expr), ctx);
            if (v.is_supported())
                cli::print_value(apply_to_thom(o, *v.supported).str(), opt, out);
            else
                cli::print_value(apply_operation(o, *v.plain).str(), opt, out);
            return 0;
        }
        if (pu->parsed()) {
            ProperMap f = ws.map(pu_map, opt.prime, mode);
            EvalContext ctx;
            ctx.prime = opt.prime;
            ctx.space = f.source;
            ctx.thom = f.src_thom ? f.src_thom : thom_module(f.emb);
            ctx.bundles.emplace("N", f.emb.normal);
            ExprValue v = eval_expr(parse_expr(pu_expr), ctx);
            if (v.is_supported()) {
                if (f.src_thom) {
                    cli::print_value(pushforward_supported(f, *v.supported).str(), opt, out);
                } else {
                    Elem pushed = proj_pushforward(f, embed_pushforward(*v.supported));
                    cli::print_value(pushed.str(), opt, out);
                }
            } else {
                cli::print_value(compose_pushforward(f, *v.plain).str(), opt, out);
            }
            return 0;
        }
        if (mp_add->parsed()) {
            ws.add_map(mp_name, json::parse(mp_json));
            ws.save(opt.workspace_path);
            out << "stored map " << mp_name << "\n";
            return 0;
        }

        // verify subcommands
        auto eval_in = [&](const SpacePtr& s, const std::string& text) {
            EvalContext ctx;
            ctx.prime = opt.prime;
            ctx.space = s;
            ExprValue v = eval_expr(parse_expr(text), ctx);
            if (v.is_supported()) throw usage_error("expected an unsupported class");
            return *v.plain;
        };
        std::vector<Report> reports;
        bool ran_verify = false;

        if (ve_wu->parsed()) {
            ran_verify = true;
            EmbeddingData e = ws.embedding(ve_embedding, opt.prime, mode);
            Operation o = cli::op_from_name(ve_op.empty() ? default_op() : ve_op, opt);
            if (!ve_a.empty())
                reports.push_back(check_wu(e, o, eval_in(e.source, ve_a)));
            else
                for (const Elem& a : detail::basis_elems(e.source->ring))
                    reports.push_back(check_wu(e, o, a));
        } else if (ve_grr->parsed()) {
            ran_verify = true;
            ProperMap f = ws.map(ve_map, opt.prime, mode);
            Operation o = cli::op_from_name(ve_op.empty() ? default_op() : ve_op, opt);
            if (!ve_a.empty())
                reports.push_back(check_grr(f, o, eval_in(f.source, ve_a)));
            else
                for (const Elem& a : detail::basis_elems(f.source->ring))
                    reports.push_back(check_grr(f, o, a));
        } else if (ve_van->parsed()) {
            ran_verify = true;
            EmbeddingData e = ws.embedding(ve_embedding, opt.prime, mode);
            Operation o = cli::op_from_name(ve_op.empty() ? default_op() : ve_op, opt);
            if (ve_s >= 0)
                reports.push_back(check_vanishing_on_thom(e, o, ve_s));
            else
                for (int s = 0; s <= e.target->dim + 1; ++s)
                    reports.push_back(check_vanishing_on_thom(e, o, s));
        } else if (ve_tr->parsed()) {
            ran_verify = true;
            Operation o = cli::op_from_name(ve_op.empty() ? default_op() : ve_op, opt);
            auto src = thom_module(linear_embedding(1, 2, opt.prime, mode));
            reports.push_back(check_resolution_transfer(
                model_supported_map(src, 1, ve_degree,
                                    ve_degree == 1 ? "resolution-model" : "alteration-model"),
                o));
        } else if (ve_deg->parsed()) {
            ran_verify = true;
            reports.push_back(check_degree_reasons(ve_n, ve_s, opt.prime));
        } else if (ve_bo->parsed()) {
            ran_verify = true;
            ProperMap f = ws.map(ve_map, opt.prime, mode);
            Elem a = ve_a.empty() ? Elem::one(f.source->ring) : eval_in(f.source, ve_a);
            reports.push_back(check_bockstein_pushforward(f, a));
        } else if (ve_all->parsed()) {
            ran_verify = true;
            reports = verify_all(opt.prime, ve_maxdim);
        }

        if (ran_verify) {
            cli::print_reports(reports, opt, out);
            return all_pass(reports) ? 0 : 1;
        }

        err << app.help();
        return 2;
    } catch (const not_well_defined& e) {
        err << "NotWellDefined: " << e.what() << "\n";
        return 1;
    } catch (const not_invertible& e) {
        err << "NotInvertible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace ccalc
