/* Copyright 2026 The hoca Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include "hoca/audit.hpp"
#include "hoca/descent.hpp"
#include "hoca/errors.hpp"
#include "hoca/graphs.hpp"
#include "hoca/hkr.hpp"
#include "hoca/json_io.hpp"
#include "hoca/transfer.hpp"
#include "hoca/twist.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <sstream>

using namespace hoca;

namespace {

struct EngineConfig {
    int d = 2;
    int max_degree = 4;
    int max_order = 3;
    int max_words = 3;
    int hbar_order = 2;
    std::uint64_t seed = 1;
    bool allow_loops = false;

    void validate() const
    {
        if (d < 1 || max_degree < 1 || max_order < 1 || max_words < 1 || hbar_order < 1)
            throw ArgumentError("all bounds must be positive");
    }
};

// A path, "-" for standard input, or an inline document starting with '{' or '['.
json read_input(const std::string& arg)
{
    std::string text;
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) {
        text = arg;
    } else if (arg == "-") {
        text.assign(std::istreambuf_iterator<char>(std::cin), {});
    } else {
        std::ifstream in(arg);
        if (!in)
            throw ArgumentError("cannot read " + arg);
        text.assign(std::istreambuf_iterator<char>(in), {});
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError("invalid JSON in " + (arg.size() > 40 ? arg.substr(0, 40) + "..." : arg) + ": " + e.what());
    }
}

std::vector<PolyVector> read_polyvectors(const std::vector<std::string>& args)
{
    std::vector<PolyVector> out;
    for (const auto& a : args)
        out.push_back(polyvector_from(read_input(a)));
    for (const auto& x : out)
        if (x.dim() != out.front().dim())
            throw ArgumentError("inputs live in different dimensions");
    return out;
}

std::vector<PolyDiffOp> read_polydiffs(const std::vector<std::string>& args)
{
    std::vector<PolyDiffOp> out;
    for (const auto& a : args)
        out.push_back(polydiff_from(read_input(a)));
    for (const auto& x : out)
        if (x.dim() != out.front().dim())
            throw ArgumentError("inputs live in different dimensions");
    return out;
}

void emit(const json& j) { std::cout << dump_document(j); }

void need(const std::vector<std::string>& args, std::size_t n, const std::string& what)
{
    if (args.size() != n)
        throw ArgumentError(what + " expects " + std::to_string(n) + " input(s)");
}

// Largest slot count and total order appearing in an operator.
std::pair<int, int> operator_extent(const PolyDiffOp& D)
{
    int words = 1, order = 1;
    for (const auto& [k, c] : D.terms()) {
        words = std::max(words, static_cast<int>(k.word.size()));
        order = std::max(order, total_order(k.word));
    }
    return {words, order};
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact symbolic engine for poly-vector fields, poly-differential operators and their homotopy structures"};
    app.require_subcommand(1);
    EngineConfig cfg;
    app.add_option("--d", cfg.d, "number of variables");
    app.add_option("--max-degree", cfg.max_degree, "coefficient degree / weight bound");
    app.add_option("--max-order", cfg.max_order, "total differential order bound");
    app.add_option("--max-words", cfg.max_words, "word length bound");
    app.add_option("--hbar-order", cfg.hbar_order, "truncation order K in hbar");
    app.add_option("--seed", cfg.seed, "sampling seed");
    app.add_flag("--allow-loops", cfg.allow_loops, "admit edges from a vertex to itself");

    std::vector<std::string> inputs;
    std::function<void()> action;
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<void()> f,
                    std::size_t min_inputs = 0) {
        auto* sub = parent->add_subcommand(name, help);
        sub->fallthrough();
        if (min_inputs > 0)
            sub->add_option("inputs", inputs, "JSON inputs (path, '-' or inline)")->expected(static_cast<int>(min_inputs), -1);
        else
            sub->add_option("inputs", inputs, "JSON inputs (path, '-' or inline)");
        sub->callback([&action, f] { action = f; });
        return sub;
    };
    auto group = [&](const std::string& name, const std::string& help) {
        auto* sub = app.add_subcommand(name, help);
        sub->fallthrough();
        sub->require_subcommand(1);
        return sub;
    };

    leaf(&app, "schouten", "Schouten bracket of two poly-vectors", [&] {
        need(inputs, 2, "schouten");
        auto x = read_polyvectors(inputs);
        emit(polyvector_json(schouten(x[0], x[1])));
    }, 2);
    leaf(&app, "wedge", "exterior product of two poly-vectors", [&] {
        need(inputs, 2, "wedge");
        auto x = read_polyvectors(inputs);
        emit(polyvector_json(wedge(x[0], x[1])));
    }, 2);
    leaf(&app, "brace", "brace D{E_1..E_k}", [&] {
        auto x = read_polydiffs(inputs);
        emit(polydiff_json(brace(x[0], std::span<const PolyDiffOp>(x).subspan(1))));
    }, 1);
    leaf(&app, "hochschild", "Hochschild differential [mu, D]", [&] {
        need(inputs, 1, "hochschild");
        emit(polydiff_json(hochschild_d(read_polydiffs(inputs)[0])));
    }, 1);
    leaf(&app, "cup", "cup product", [&] {
        need(inputs, 2, "cup");
        auto x = read_polydiffs(inputs);
        emit(polydiff_json(cup(x[0], x[1])));
    }, 2);

    auto* hkr = group("hkr", "HKR maps");
    leaf(hkr, "i", "poly-vector to cocycle", [&] {
        need(inputs, 1, "hkr i");
        emit(polydiff_json(hkr_i(read_polyvectors(inputs)[0])));
    }, 1);
    leaf(hkr, "p", "projection to poly-vectors", [&] {
        need(inputs, 1, "hkr p");
        emit(polyvector_json(hkr_p(read_polydiffs(inputs)[0])));
    }, 1);
    leaf(hkr, "h", "contracting homotopy", [&] {
        need(inputs, 1, "hkr h");
        auto D = read_polydiffs(inputs)[0];
        auto [words, order] = operator_extent(D);
        HomotopyTable t(D.dim(), std::max(words, cfg.max_words), std::max(order, cfg.max_order));
        emit(polydiff_json(t.apply(D)));
    }, 1);

    leaf(&app, "cohomology", "Hochschild cohomology dimensions of the constant-coefficient blocks", [&] {
        cfg.validate();
        HomotopyTable t(cfg.d, cfg.max_words, cfg.max_order);
        json blocks = json::array();
        for (int n = 0; n <= cfg.max_words; ++n)
            for (int w = 0; w <= cfg.max_order; ++w) {
                std::size_t ext = 0;
                for (const auto& b : t.blocks(n, w))
                    ext += exterior_dim(cfg.d, b);
                blocks.push_back({{"n", n}, {"w", w}, {"dim", t.cohomology_dim(n, w)}, {"exterior_dim", ext}});
            }
        emit({{"type", "cohomology"}, {"d", cfg.d}, {"blocks", blocks}});
    });

    auto* tr = group("transfer", "homotopy transfer to poly-vectors");
    int arity = 2;
    std::size_t samples = 50;
    leaf(tr, "psi", "transfer morphism on poly-vector inputs", [&] {
        auto x = read_polyvectors(inputs);
        TransferContext ctx(x[0].dim(), static_cast<int>(x.size()));
        emit(polydiff_json(ctx.psi(x)));
    }, 1);
    leaf(tr, "q1", "transferred bracket-form structure on poly-vectors", [&] {
        auto x = read_polyvectors(inputs);
        TransferContext ctx(x[0].dim(), static_cast<int>(x.size()));
        emit(polyvector_json(ctx.q1(x)));
    }, 1);
    auto* tcheck = leaf(tr, "check", "check the transfer identities on sampled basis tuples", [&] {
        cfg.validate();
        if (arity < 1)
            throw ArgumentError("arity must be positive");
        TransferContext ctx(cfg.d, arity + 1);
        auto r = check_transfer(ctx, arity, samples, cfg.seed);
        emit(report_json(r));
        if (!r.ok())
            throw CLI::RuntimeError(1);
    });
    tcheck->add_option("--arity", arity, "arity n");
    tcheck->add_option("--samples", samples, "number of sampled tuples");

    auto* tw = group("twist", "Maurer-Cartan elements and twisting");
    leaf(tw, "mc", "check the MC equation for an operator series", [&] {
        need(inputs, 1, "twist mc");
        auto w = series_polydiff_from(read_input(inputs[0]));
        validate_mc_element(w);
        auto r = mc_residual_b(w);
        emit({{"type", "mc_report"}, {"mc", r.is_zero()}, {"residual", series_polydiff_json(r)}});
    }, 1);
    leaf(tw, "apply", "twisted differential of a series: d + [w, -]", [&] {
        need(inputs, 2, "twist apply");
        auto w = series_polydiff_from(read_input(inputs[0]));
        auto g = series_polydiff_from(read_input(inputs[1]));
        emit(series_polydiff_json(twist_b(w).differential(g)));
    }, 2);
    leaf(tw, "morphism", "push hbar * pi through the transfer morphism", [&] {
        need(inputs, 1, "twist morphism");
        cfg.validate();
        auto pi = read_polyvectors(inputs)[0];
        const int K = cfg.hbar_order;
        TransferContext ctx(pi.dim(), std::max(K, 2));
        SeriesVec w = zero_series_vec(pi.dim(), K);
        w[1] = pi;
        auto t = twist_morphism(transfer_morphism(ctx), w, PolyDiffOp(pi.dim()));
        emit({{"type", "twisted_morphism"},
              {"omega_prime", series_polydiff_json(t.omega_prime)},
              {"mc_input", mc_check_l(transferred_family(ctx), w)},
              {"mc_output", mc_check_b(t.omega_prime)}});
    }, 1);
    leaf(tw, "grouplike", "check that exp(w) is group-like", [&] {
        need(inputs, 1, "twist grouplike");
        emit({{"type", "grouplike_report"}, {"grouplike", grouplike_check(series_polydiff_from(read_input(inputs[0])))}});
    }, 1);
    leaf(tw, "moyal", "Moyal series of a constant antisymmetric 2-slot operator", [&] {
        need(inputs, 1, "twist moyal");
        cfg.validate();
        emit(series_polydiff_json(moyal_series(read_polydiffs(inputs)[0], cfg.hbar_order)));
    }, 1);

    auto* de = group("descent", "descent under derivation actions");
    leaf(de, "fixed", "fixed forms under contractions with linear vector fields", [&] {
        cfg.validate();
        auto model = de_rham_model(cfg.d, cfg.max_degree);
        auto fields = read_polyvectors(inputs);
        std::vector<std::string> names;
        std::vector<BlockOperator> ops;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (fields[k].dim() != cfg.d)
                throw ArgumentError("vector field dimension differs from --d");
            names.push_back("s" + std::to_string(k + 1));
            ops.push_back(model.contraction(fields[k]));
        }
        auto act = register_action(model.module, names, ops, {model.wedge}, cfg.seed);
        auto fixed = fixed_subspace(model.module, model.differential, act);
        auto closure = closure_check(model.module, model.differential, act, fixed, {model.wedge});
        json j = fixed_subspace_json(fixed);
        json labels = json::array();
        for (const auto& [b, vs] : fixed.basis)
            for (const auto& v : vs)
                labels.push_back(model.label(b, v));
        j["labels"] = labels;
        j["closed"] = closure.closed;
        emit(j);
    });

    auto* gr = group("graphs", "admissible graphs");
    std::vector<int> out_degrees;
    int sinks = 0;
    bool linear_only = false;
    auto* genum = leaf(gr, "enum", "enumerate admissible graphs", [&] {
        json list = json::array();
        for (const auto& g : enumerate_graphs(out_degrees, sinks, cfg.allow_loops))
            list.push_back(graph_json(g));
        emit({{"type", "graph_list"}, {"count", list.size()}, {"graphs", list}});
    });
    genum->add_option("--out-degrees", out_degrees, "out-degree of each vertex of the first type")->required();
    genum->add_option("--n", sinks, "number of sinks");
    leaf(gr, "eval", "operator U_Gamma of a graph on poly-vector inputs", [&] {
        if (inputs.empty())
            throw ArgumentError("graphs eval expects a graph followed by its poly-vector inputs");
        auto g = graph_from(read_input(inputs[0]));
        auto x = read_polyvectors(std::vector<std::string>(inputs.begin() + 1, inputs.end()));
        emit(polydiff_json(evaluate_graph_op(g, x)));
    }, 1);
    auto* gspan = leaf(gr, "span", "compare the graph span with the invariant operators", [&] {
        cfg.validate();
        std::vector<int> orders(static_cast<std::size_t>(std::max(sinks, 0)), cfg.max_order);
        auto r = invariant_span_compare(cfg.d, out_degrees, sinks, orders,
                                        linear_only ? Invariance::linear_only : Invariance::affine, cfg.allow_loops);
        emit(span_report_json(r));
    });
    gspan->add_option("--out-degrees", out_degrees, "out-degree of each vertex of the first type")->required();
    gspan->add_option("--n", sinks, "number of sinks");
    gspan->add_flag("--linear-only", linear_only, "drop translation invariance");

    bool serial = false;
    auto* audit = leaf(&app, "audit", "run the identity suite", [&] {
        auto r = run_audit(cfg.seed, !serial);
        emit(audit_json(r));
        if (!r.passed())
            throw CLI::RuntimeError(1);
    });
    audit->add_flag("--serial", serial, "run the checks one after another");

    try {
        app.parse(argc, argv);
        if (!action)
            throw ArgumentError("no command given");
        action();
    } catch (const CLI::RuntimeError& e) {
        return e.get_exit_code();
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    } catch (const ArgumentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource bound: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
