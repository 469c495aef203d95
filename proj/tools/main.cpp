// Command-line workbench: weight tables, ball sizes, code-size bounds,
// asymptotic curves, network analysis and adversarial-error simulation.
//
// Exit codes: 0 success, 1 verification mismatch, 2 usage or input error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "qmc/qmc.hpp"

namespace {

using namespace qmc;

struct RingChoice {
    std::string spec = "z4";
    std::string gamma_text;  // empty: use the ring's default
};

struct ResolvedWeight {
    Ring ring;
    WeightFunction w;
    bool default_gamma_used;
};

ResolvedWeight resolve_weight(const RingChoice& choice) {
    Ring ring = parse_ring_spec(choice.spec);
    bool use_default = choice.gamma_text.empty();
    Rat gamma = use_default ? default_gamma(ring) : parse_rational(choice.gamma_text);
    return {ring, homogeneous_weight(ring, gamma), use_default};
}

void print_context(std::ostream& out, const ResolvedWeight& rw, bool csv) {
    out << (csv ? "# " : "") << "ring=" << rw.ring.spec_string() << " gamma="
        << rw.w.gamma.get_str() << (rw.default_gamma_used ? " (default)" : "") << "\n";
}

std::string bound_csv_row(const BoundReport& rep) {
    std::ostringstream row;
    row << rep.name << "," << (rep.applicable ? 1 : 0) << ","
        << (rep.applicable ? rep.value.get_str() : "") << ","
        << (rep.radius ? rep.radius->get_str() : "") << "," << rep.s << "," << rep.ell << ","
        << rep.d.get_str() << "," << rep.gamma.get_num().get_str() << ","
        << rep.gamma.get_den().get_str();
    return row.str();
}

void print_bound_table_line(const BoundReport& rep) {
    std::cout << "  " << rep.name;
    for (std::size_t pad = rep.name.size(); pad < 10; ++pad) std::cout << ' ';
    if (rep.applicable) {
        std::cout << rep.value.get_str();
        if (rep.exact != Rat(rep.value)) std::cout << "  (exact " << rep.exact.get_str() << ")";
        if (rep.radius) std::cout << "  r=" << rep.radius->get_str();
        if (!rep.detail.empty()) std::cout << "  [" << rep.detail << "]";
    } else {
        std::cout << "n/a  (" << rep.detail << ")";
    }
    std::cout << "\n";
}

int cmd_weights(const RingChoice& choice, bool csv) {
    auto rw = resolve_weight(choice);
    print_context(std::cout, rw, csv);
    if (csv) {
        std::cout << weight_table_csv(rw.w);
    } else {
        for (std::int64_t a = 0; a < rw.ring.cardinality(); ++a)
            std::cout << "  w(" << a << ") = " << rw.w.table[a].get_str() << "\n";
    }
    if (rw.ring.cardinality() <= (1 << 12)) {
        auto rep = verify_homogeneous(rw.w);
        if (!csv)
            std::cout << "homogeneous: " << (rep.ok ? "yes" : "NO (" + rep.detail + ")") << "\n";
        if (!rep.ok) return 1;
    }
    return 0;
}

int cmd_ball(const RingChoice& choice, int length, const std::string& radius_text) {
    auto rw = resolve_weight(choice);
    print_context(std::cout, rw, false);
    Rat radius = parse_rational(radius_text);
    std::cout << "ball(k=" << length << ", r=" << radius.get_str()
              << ") = " << ball_size(rw.w, length, radius).get_str() << "\n";
    return 0;
}

int cmd_bounds(const RingChoice& choice, int n, int s, int ell, const std::string& d_text,
               bool csv) {
    auto rw = resolve_weight(choice);
    Rat d = parse_rational(d_text);
    if (d <= 0) throw OutOfRangeError("d must be positive");
    if (n < s || s < ell || ell < 0)
        throw OutOfRangeError("parameters must satisfy n >= s >= ell >= 0");
    print_context(std::cout, rw, csv);
    std::vector<BoundReport> reports = {
        plotkin_bound(d, s, ell, rw.w.gamma),
        elias_bound_optimized(rw.w, s, ell, d),
        sphere_packing_bound(rw.w, s, ell, d),
        combined_bound(rw.w, n, s, ell, d),
    };
    if (csv) {
        std::cout << "name,applicable,value,r,s,ell,d,gamma_num,gamma_den\n";
        for (const auto& rep : reports) std::cout << bound_csv_row(rep) << "\n";
    } else {
        std::cout << "bounds for n=" << n << " s=" << s << " ell=" << ell
                  << " d=" << d.get_str() << "\n";
        for (const auto& rep : reports) print_bound_table_line(rep);
    }
    return 0;
}

int cmd_asymptotic(const RingChoice& choice, double sigma, double lambda, double step) {
    auto rw = resolve_weight(choice);
    print_context(std::cout, rw, true);
    auto curve = evaluate_curves(rw.w, sigma, lambda, step);
    std::cout << "delta,plotkin,elias,sphere\n";
    auto cell = [](const std::optional<double>& v) {
        if (!v) return std::string();
        std::ostringstream out;
        out.precision(9);
        out << std::fixed << *v;
        return out.str();
    };
    for (std::size_t i = 0; i < curve.delta.size(); ++i) {
        std::ostringstream d;
        d.precision(9);
        d << std::fixed << curve.delta[i];
        std::cout << d.str() << "," << cell(curve.plotkin[i]) << "," << cell(curve.elias[i])
                  << "," << cell(curve.sphere[i]) << "\n";
    }
    return 0;
}

struct NetworkOptions {
    std::string path;
    std::string gamma_text;
    std::string messages = "all";  // "all" or a file of message rows
    std::string coeffs = "file";   // "file", "ones" or "random:<seed>"
    bool keep_order = false;
};

struct LoadedNetwork {
    NetworkSpec net;
    RingMatrix f;
    ResolvedWeight rw;
    std::vector<Vec> messages;
    std::vector<Vec> embedded;
};

LoadedNetwork load_network_setup(const NetworkOptions& opt) {
    NetworkSpec net = read_network_file(opt.path, opt.keep_order);
    CoeffMode mode = CoeffMode::from_file();
    if (opt.coeffs == "ones") {
        mode = CoeffMode::ones();
    } else if (opt.coeffs.rfind("random:", 0) == 0) {
        mode = CoeffMode::random(std::stoull(opt.coeffs.substr(7)));
    } else if (opt.coeffs != "file") {
        throw FormatError("unknown --coeffs mode: " + opt.coeffs);
    }
    RingMatrix f = transfer_matrix(assign_coefficients(net, mode));

    bool use_default = opt.gamma_text.empty();
    Rat gamma = use_default ? default_gamma(net.ring) : parse_rational(opt.gamma_text);
    ResolvedWeight rw{net.ring, homogeneous_weight(net.ring, gamma), use_default};

    std::vector<Vec> messages;
    if (opt.messages == "all") {
        messages = all_messages(net.ring, net.m);
    } else {
        std::ifstream in(opt.messages);
        if (!in) throw FormatError("cannot open message file: " + opt.messages);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            Vec msg;
            std::int64_t v;
            while (ls >> v) msg.push_back(v);
            if (msg.empty()) continue;
            if (static_cast<int>(msg.size()) != net.m)
                throw FormatError("message rows must have m entries");
            messages.push_back(std::move(msg));
        }
        if (messages.empty()) throw FormatError("message file is empty");
    }
    std::vector<Vec> embedded;
    for (const auto& m : messages) embedded.push_back(embed_message(m, net.edge_count()));
    return {std::move(net), std::move(f), std::move(rw), std::move(messages),
            std::move(embedded)};
}

int cmd_network_analyze(const NetworkOptions& opt, bool csv) {
    auto setup = load_network_setup(opt);
    print_context(std::cout, setup.rw, csv);
    auto params = network_code_params(setup.net, setup.f, setup.messages, setup.rw.w);
    auto mc = multicast_check(setup.net, setup.f, setup.messages);
    if (csv) {
        std::cout << "sink,n_t,s_t,ell_t,size,d,multicast,bound\n";
        for (const auto& p : params.per_sink) {
            std::cout << setup.net.node_names[p.sink] << "," << p.n_t << "," << p.s_t << ","
                      << p.ell_t << "," << p.size << "," << (p.d ? p.d->get_str() : "") << ","
                      << (mc.at(p.sink) ? 1 : 0) << ","
                      << (p.bound && p.bound->applicable ? p.bound->value.get_str() : "")
                      << "\n";
        }
    } else {
        std::cout << params.summary_line() << "\n";
        std::cout << "edges n=" << setup.net.edge_count() << "  source packets m=" << setup.net.m
                  << "  messages " << setup.messages.size() << "\n";
        for (const auto& p : params.per_sink) {
            std::cout << "sink " << setup.net.node_names[p.sink] << ": n_t=" << p.n_t
                      << " s_t=" << p.s_t << " ell_t=" << p.ell_t << " |C_t|=" << p.size
                      << " d_t=" << (p.d ? p.d->get_str() : "-")
                      << " multicast=" << (mc.at(p.sink) ? "yes" : "NO");
            if (p.bound && p.bound->applicable)
                std::cout << " size-bound<=" << p.bound->value.get_str() << " ["
                          << p.bound->detail << "]";
            std::cout << "\n";
        }
    }
    for (const auto& [sink, ok] : mc)
        if (!ok) return 1;
    return 0;
}

ErrorModel parse_error_model(const std::string& text, const Ring& ring, int n) {
    if (text.rfind("exhaustive:", 0) == 0)
        return ErrorModel::exhaustive(parse_rational(text.substr(11)));
    if (text.rfind("random:", 0) == 0) {
        auto rest = text.substr(7);
        auto colon = rest.find(':');
        if (colon == std::string::npos)
            throw FormatError("random model needs 'random:<count>:<seed>'");
        return ErrorModel::random_edges(std::stoi(rest.substr(0, colon)),
                                        std::stoull(rest.substr(colon + 1)));
    }
    if (text.rfind("fixed:", 0) == 0) {
        Vec e;
        std::string rest = text.substr(6);
        for (char& c : rest)
            if (c == ',') c = ' ';
        std::istringstream in(rest);
        std::int64_t v;
        while (in >> v) e.push_back(v);
        if (static_cast<int>(e.size()) != n)
            throw FormatError("fixed error must list n edge values");
        for (auto v2 : e)
            if (v2 < 0 || v2 >= ring.cardinality()) throw FormatError("error value out of range");
        return ErrorModel::fixed(std::move(e));
    }
    throw FormatError("unknown error model: " + text);
}

int cmd_network_simulate(const NetworkOptions& opt, const std::string& model_text,
                         std::uint64_t trials, bool csv) {
    auto setup = load_network_setup(opt);
    print_context(std::cout, setup.rw, csv);
    std::vector<SinkView> views;
    std::vector<std::string> names;
    for (int t : setup.net.sinks) {
        views.push_back(sink_view(setup.net, setup.f, t, setup.messages, setup.rw.w));
        names.push_back(setup.net.node_names[t]);
    }
    ErrorModel model = parse_error_model(model_text, setup.net.ring, setup.net.edge_count());
    auto result = run_trials(views, setup.embedded, setup.rw.w, model, trials);
    if (csv) {
        std::cout << simulation_csv(names, result);
    } else {
        std::cout << "trials " << result.trials << "\n";
        for (std::size_t i = 0; i < views.size(); ++i) {
            const auto& c = result.per_sink[i];
            std::cout << "sink " << names[i] << ": correct " << c.correct << ", miscorrected "
                      << c.miscorrected << ", detected " << c.detected << ", invisible "
                      << c.invisible << "\n";
        }
    }
    return 0;
}

/// Golden-fixture verification. Exits 1 on the first mismatch, 2 when the
/// fixtures cannot be loaded.
int cmd_verify(const std::string& data_dir) {
    int failures = 0;
    auto report = [&](const std::string& what, bool ok, const std::string& detail = "") {
        std::cout << (ok ? "ok   " : "FAIL ") << what;
        if (!ok && !detail.empty()) std::cout << "  (" << detail << ")";
        std::cout << "\n";
        if (!ok) ++failures;
    };

    auto net = read_network_file(data_dir + "/multicast15.net");
    auto k_gold = read_matrix_file(data_dir + "/multicast15_K.txt");
    auto f_gold = read_matrix_file(data_dir + "/multicast15_F.txt");

    auto pattern = line_graph_pattern(net);
    bool pattern_ok = true;
    for (int i = 0; i < 15 && pattern_ok; ++i)
        for (int j = 0; j < 15 && pattern_ok; ++j)
            pattern_ok = static_cast<bool>(pattern[i][j]) == (k_gold.at(i, j) != 0);
    report("line-graph pattern matches coefficient fixture", pattern_ok);

    auto k = assign_coefficients(net, CoeffMode::from_file());
    report("coefficient matrix K", k == k_gold);

    auto f = transfer_matrix(k);
    {
        bool ok = f == f_gold;
        std::string where;
        if (!ok)
            for (int i = 0; i < 15 && where.empty(); ++i)
                for (int j = 0; j < 15 && where.empty(); ++j)
                    if (f.at(i, j) != f_gold.at(i, j))
                        where = "first difference at row " + std::to_string(i + 1) + ", col " +
                                std::to_string(j + 1);
        report("transfer matrix F = (I-K)^{-1}", ok, where);
    }
    report("F(I-K) = I",
           mat_mul(f_gold, mat_sub(RingMatrix::identity(net.ring, 15), k_gold)) ==
               RingMatrix::identity(net.ring, 15));

    auto w = homogeneous_weight(net.ring, rat(1, 2));
    auto msgs = all_messages(net.ring, 2);
    auto v1 = sink_view(net, f, net.sinks[0], msgs, w);
    auto v2 = sink_view(net, f, net.sinks[1], msgs, w);
    report("sink 1 generator rows (01; 11)",
           v1.Ft.row(0) == Vec{0, 1} && v1.Ft.row(1) == Vec{1, 1});
    report("sink 2 generator rows (001; 111)",
           v2.Ft.row(0) == Vec{0, 0, 1} && v2.Ft.row(1) == Vec{1, 1, 1});

    {
        std::vector<Rat> weights;
        for (const auto& rep : v2.Ct.reps()) weights.push_back(induced_weight(w, v2.Kt, rep));
        std::sort(weights.begin(), weights.end());
        report("coset weights at sink 2 are (0,1,1,1)",
               weights == std::vector<Rat>{rat(0), rat(1), rat(1), rat(1)});
    }

    auto params = network_code_params(net, f, msgs, w);
    report("parameter line",
           params.summary_line() == "(15, {(2,15,4,1),(3,15,4,1)}) network code of size 4",
           params.summary_line());

    // length-7 quotient code over Z4
    auto code_file = read_code_file(data_dir + "/z4d8_code.txt");
    auto fmap = read_matrix_file(data_dir + "/z4d8_map.txt");
    auto lee = homogeneous_weight(code_file.ring, rat(1));
    auto kernel = submodule_span(code_file.ring, code_file.n, code_file.kernel_generators);
    report("kernel support size 6", kernel.support() == std::set<int>{1, 2, 3, 4, 5, 6});
    QuotientCode code(kernel, code_file.representatives, lee);
    report("minimum induced Lee distance 8", min_induced_distance(code) == rat(8));
    auto plotkin = plotkin_bound(rat(8), 7, 6, rat(1));
    report("size bound (d-gamma*l)/(d-gamma*s) = 2", plotkin.applicable && plotkin.value == 2);

    auto map_kernel = submodule_span(code_file.ring, code_file.n, left_kernel(fmap).row_list());
    report("quotient map kernel equals K", map_kernel.elements() == kernel.elements());
    {
        std::set<Vec> images;
        for (const auto& rep : code_file.representatives)
            for (const auto& z : kernel.elements())
                images.insert(vec_mat_mul(vec_add(code_file.ring, rep, z), fmap));
        std::set<Vec> expected = {{1, 2, 0, 0, 2, 3}, {3, 0, 0, 2, 2, 1}};
        report("images of the code under the quotient map", images == expected);
    }

    if (failures == 0) std::cout << "all checks passed\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for codes in quotient modules over finite rings"};
    app.require_subcommand(1);

    RingChoice choice;
    bool csv = false;

    auto add_ring_opts = [&](CLI::App* cmd) {
        cmd->add_option("--ring", choice.spec,
                        "alphabet: z<m>, f<p>, f:<p>:<e>:<c0,..,ce> or m2:<q-spec>");
        cmd->add_option("--gamma", choice.gamma_text, "weight normalization (rational)");
    };

    auto* weights_cmd = app.add_subcommand("weights", "print a homogeneous weight table");
    add_ring_opts(weights_cmd);
    weights_cmd->add_flag("--csv", csv, "machine-readable output");

    auto* ball_cmd = app.add_subcommand("ball", "count words within a weight radius");
    add_ring_opts(ball_cmd);
    int ball_len = 1;
    std::string ball_radius = "0";
    ball_cmd->add_option("--k", ball_len, "word length")->required();
    ball_cmd->add_option("--r", ball_radius, "radius (rational)")->required();

    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate code-size bounds");
    add_ring_opts(bounds_cmd);
    int b_n = 0, b_s = 0, b_ell = 0;
    std::string b_d = "1";
    bounds_cmd->add_option("--n", b_n, "ambient length")->required();
    bounds_cmd->add_option("--s", b_s, "message support size")->required();
    bounds_cmd->add_option("--ell", b_ell, "kernel support size")->required();
    bounds_cmd->add_option("--d", b_d, "minimum induced distance (rational)")->required();
    bounds_cmd->add_flag("--csv", csv, "machine-readable output");

    auto* asym_cmd = app.add_subcommand("asymptotic", "emit asymptotic bound curves as CSV");
    add_ring_opts(asym_cmd);
    double a_sigma = 1.0, a_lambda = 0.0, a_step = 0.01;
    asym_cmd->add_option("--sigma", a_sigma, "relative support (0,1]")->required();
    asym_cmd->add_option("--lambda", a_lambda, "relative kernel support [0,sigma)")->required();
    asym_cmd->add_option("--step", a_step, "delta grid step");

    auto* network_cmd = app.add_subcommand("network", "analyze or simulate a network file");
    network_cmd->require_subcommand(1);
    NetworkOptions nopt;
    auto add_network_opts = [&](CLI::App* cmd) {
        cmd->add_option("file", nopt.path, "network description file")->required();
        cmd->add_option("--gamma", nopt.gamma_text, "weight normalization (rational)");
        cmd->add_option("--messages", nopt.messages, "'all' or a file of message rows");
        cmd->add_option("--coeffs", nopt.coeffs, "'file', 'ones' or 'random:<seed>'");
        cmd->add_flag("--keep-edge-order", nopt.keep_order,
                      "fail instead of reordering edges topologically");
    };
    auto* analyze_cmd = network_cmd->add_subcommand("analyze", "per-sink code parameters");
    add_network_opts(analyze_cmd);
    analyze_cmd->add_flag("--csv", csv, "machine-readable output");
    auto* simulate_cmd = network_cmd->add_subcommand("simulate", "adversarial error trials");
    add_network_opts(simulate_cmd);
    std::string model_text = "exhaustive:1";
    std::uint64_t trials = 100;
    simulate_cmd->add_option("--model", model_text,
                             "exhaustive:<budget> | random:<count>:<seed> | fixed:<v1,..,vn>")
        ->required();
    simulate_cmd->add_option("--trials", trials, "trial count for random models");
    simulate_cmd->add_flag("--csv", csv, "machine-readable output");

    auto* verify_cmd = app.add_subcommand("verify", "re-derive bundled golden fixtures");
    std::string verify_what = "paper-examples";
    std::string data_dir = "data";
    verify_cmd->add_option("target", verify_what, "what to verify (paper-examples)");
    verify_cmd->add_option("--data", data_dir, "fixture directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (weights_cmd->parsed()) return cmd_weights(choice, csv);
        if (ball_cmd->parsed()) return cmd_ball(choice, ball_len, ball_radius);
        if (bounds_cmd->parsed()) return cmd_bounds(choice, b_n, b_s, b_ell, b_d, csv);
        if (asym_cmd->parsed()) return cmd_asymptotic(choice, a_sigma, a_lambda, a_step);
        if (network_cmd->parsed()) {
            if (analyze_cmd->parsed()) return cmd_network_analyze(nopt, csv);
            if (simulate_cmd->parsed()) return cmd_network_simulate(nopt, model_text, trials, csv);
        }
        if (verify_cmd->parsed()) {
            if (verify_what != "paper-examples")
                throw FormatError("unknown verify target: " + verify_what);
            return cmd_verify(data_dir);
        }
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const OutOfRangeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
