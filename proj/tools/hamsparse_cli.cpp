#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hamsparse/generate.hpp"
#include "hamsparse/generic.hpp"
#include "hamsparse/json_io.hpp"
#include "hamsparse/nrd.hpp"
#include "hamsparse/nullity1.hpp"
#include "hamsparse/partition.hpp"
#include "hamsparse/pauli.hpp"
#include "hamsparse/qmaxcsp.hpp"
#include "hamsparse/rng.hpp"
#include "hamsparse/xor_sparsify.hpp"

namespace hs = hamsparse;

namespace {

hs::Relation parse_relation(const std::string& spec, int arity) {
    hs::Relation rel;
    rel.arity = arity;
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        if (static_cast<int>(tok.size()) != arity)
            throw std::invalid_argument("relation tuple '" + tok + "' has wrong arity");
        std::uint32_t v = 0;
        for (char c : tok) v = (v << 1) | static_cast<std::uint32_t>(c == '1');
        rel.members.push_back(v);
    }
    std::sort(rel.members.begin(), rel.members.end());
    rel.members.erase(std::unique(rel.members.begin(), rel.members.end()), rel.members.end());
    return rel;
}

hs::InstanceSpec spec_from_json(const hs::Json& j) {
    hs::InstanceSpec spec;
    spec.family = j.at("family").get<std::string>();
    spec.n = j.value("n", 8);
    spec.m = j.value("m", 0);
    spec.r = j.value("r", 2);
    spec.rank = j.value("rank", 3);
    spec.edge_probability = j.value("p", 0.5);
    spec.seed = j.value("seed", 0ULL);
    if (j.contains("relation"))
        spec.relation = parse_relation(j["relation"].get<std::string>(), spec.r);
    return spec;
}

struct RunOutcome {
    hs::SparsifierWeights weights;
    hs::SparsifierReport report;
    hs::Json aux = hs::Json::object();
};

RunOutcome dispatch_pipeline(const std::string& pipeline, const hs::Hamiltonian& h, double eps,
                             std::uint64_t seed) {
    RunOutcome out;
    if (pipeline == "pauli") {
        hs::PauliSparsifyStats stats;
        out.weights = hs::sparsify_pauli(h, eps, seed, &stats);
        out.aux = {{"classes", stats.classes},
                   {"pieces", stats.pieces},
                   {"merged_duplicates", stats.merged_duplicates},
                   {"retries", stats.xor_attempts - stats.pieces}};
    } else if (pipeline == "generic") {
        hs::GenericSparsifyStats stats;
        out.weights = hs::sparsify_generic(h, eps, seed, &stats);
        out.aux = {{"pieces", stats.pieces}, {"certificate", stats.certificate}};
    } else if (pipeline == "nullity1") {
        hs::Nullity1Trace trace;
        out.weights = hs::sparsify_nullity1(h, eps, seed, &trace);
        out.aux = {{"depth", trace.depth},
                   {"covers_per_level", trace.covers_per_level},
                   {"c_per_level", trace.c_per_level}};
    } else if (pipeline == "fullrank") {
        out.weights = hs::sparsify_fullrank(h, eps, seed);
    } else if (pipeline == "maxcut") {
        const hs::ShiftedSparsifyResult res = hs::sparsify_shifted(h, eps, seed);
        out.weights = res.weights;
        out.aux = {{"retries", res.attempts - 1}};
        // The pipeline certifies the identity-shifted sandwich; that is what
        // the report attests.
        out.report = hs::verify_sparsifier(hs::shift_by_identity(h), out.weights, eps);
        return out;
    } else {
        throw std::invalid_argument("unknown pipeline: " + pipeline);
    }
    out.report = hs::verify_sparsifier(h, out.weights, eps);
    return out;
}

hs::Json run_config(const hs::Json& config, long long* millis_out) {
    const std::string pipeline = config.at("pipeline").get<std::string>();
    const double eps = config.at("eps").get<double>();
    if (!(eps > 0 && eps < 1)) throw std::invalid_argument("config eps must lie in (0, 1)");
    if (!config.contains("seed")) throw std::invalid_argument("config seed is mandatory");
    const std::uint64_t seed = config.at("seed").get<std::uint64_t>();

    hs::Hamiltonian h;
    if (config.contains("instance") && config["instance"].is_object() &&
        config["instance"].contains("family")) {
        h = hs::generate_instance(spec_from_json(config["instance"]));
    } else if (config.contains("instance_path")) {
        h = hs::hamiltonian_from_json(hs::read_json_file(config["instance_path"].get<std::string>()));
    } else {
        throw std::invalid_argument("config needs an instance spec or instance_path");
    }

    const auto start = std::chrono::steady_clock::now();
    const RunOutcome outcome = dispatch_pipeline(pipeline, h, eps, seed);
    const auto stop = std::chrono::steady_clock::now();
    if (millis_out)
        *millis_out =
                std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();

    // Timing is reported only in bench CSV rows so that identical configs
    // produce byte-identical reports.
    hs::Json report;
    report["config"] = config;
    report["m"] = h.size();
    report["support"] = outcome.weights.support();
    report["total_weight"] = outcome.weights.total();
    report["verification"] = hs::report_to_json(outcome.report);
    report["aux"] = outcome.aux;
    report["weights"] = hs::weights_to_json(outcome.weights);
    return report;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hamiltonian sparsification toolkit"};
    app.require_subcommand(1);

    // --- gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    std::string gen_family = "pauli", gen_out, gen_relation;
    int gen_n = 8, gen_m = 20, gen_r = 2, gen_rank = 3;
    double gen_p = 0.5;
    std::uint64_t gen_seed = 0;
    gen->add_option("--family", gen_family, "pauli|generic|nullity1|fullrank|maxcut|classical");
    gen->add_option("--n", gen_n);
    gen->add_option("--m", gen_m);
    gen->add_option("--r", gen_r);
    gen->add_option("--rank", gen_rank);
    gen->add_option("--p", gen_p, "edge probability (maxcut)");
    gen->add_option("--relation", gen_relation, "comma-separated bitstrings (classical)");
    gen->add_option("--seed", gen_seed)->required();
    gen->add_option("--out", gen_out, "output path (stdout when omitted)");

    // --- sparsify ----------------------------------------------------------
    auto* sparsify = app.add_subcommand("sparsify", "run a sparsification pipeline");
    std::string sp_pipeline, sp_in, sp_out, sp_config;
    double sp_eps = 0.25;
    std::uint64_t sp_seed = 0;
    sparsify->add_option("pipeline", sp_pipeline, "pauli|generic|nullity1|fullrank|maxcut|xor");
    sparsify->add_option("--config", sp_config, "full run config JSON (overrides other flags)");
    sparsify->add_option("--in", sp_in, "instance JSON path");
    sparsify->add_option("--eps", sp_eps);
    sparsify->add_option("--seed", sp_seed);
    sparsify->add_option("--out", sp_out, "report JSON path (stdout when omitted)");

    // --- verify ------------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "verify a weight map against an instance");
    std::string vf_in, vf_weights, vf_out;
    double vf_eps = 0.25;
    verify->add_option("--in", vf_in)->required();
    verify->add_option("--weights", vf_weights)->required();
    verify->add_option("--eps", vf_eps)->required();
    verify->add_option("--out", vf_out);

    // --- partition ---------------------------------------------------------
    auto* partition = app.add_subcommand("partition", "partite peeling of an instance");
    std::string pt_in, pt_out;
    partition->add_option("--in", pt_in)->required();
    partition->add_option("--out", pt_out);

    // --- stream-sparsify ---------------------------------------------------
    auto* stream = app.add_subcommand("stream-sparsify", "reservoir pass over 'u v w' lines");
    int st_n = 8;
    double st_eps = 0.3;
    std::uint64_t st_seed = 0;
    std::string st_out;
    stream->add_option("--n", st_n)->required();
    stream->add_option("--eps", st_eps)->required();
    stream->add_option("--seed", st_seed)->required();
    stream->add_option("--out", st_out);

    // --- nrd ---------------------------------------------------------------
    auto* nrd = app.add_subcommand("nrd", "non-redundancy laboratory");
    std::string nrd_mode, nrd_in, nrd_out, nrd_relation, nrd_literals;
    int nrd_n = 6, nrd_r = 2, nrd_rank = 1, nrd_pool = 1;
    std::uint64_t nrd_seed = 0;
    nrd->add_option("--mode", nrd_mode, "certify|construct-tensor|classify-2qubit|audit-generic|project")
            ->required();
    nrd->add_option("--in", nrd_in);
    nrd->add_option("--n", nrd_n);
    nrd->add_option("--r", nrd_r);
    nrd->add_option("--rank", nrd_rank);
    nrd->add_option("--pool", nrd_pool);
    nrd->add_option("--relation", nrd_relation);
    nrd->add_option("--literals", nrd_literals, "comma list of 0,1,xK,!xK");
    nrd->add_option("--seed", nrd_seed);
    nrd->add_option("--out", nrd_out);

    // --- bench -------------------------------------------------------------
    auto* bench = app.add_subcommand("bench", "CSV sweep over run configs");
    std::string bn_config, bn_out;
    bench->add_option("--config", bn_config, "JSON array of run configs")->required();
    bench->add_option("--out", bn_out, "CSV path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    const auto emit = [](const std::string& path, const hs::Json& j) {
        if (path.empty())
            std::cout << j.dump(2) << "\n";
        else
            hs::write_json_file(path, j);
    };

    try {
        if (*gen) {
            hs::InstanceSpec spec;
            spec.family = gen_family;
            spec.n = gen_n;
            spec.m = gen_m;
            spec.r = gen_r;
            spec.rank = gen_rank;
            spec.edge_probability = gen_p;
            spec.seed = gen_seed;
            if (!gen_relation.empty()) spec.relation = parse_relation(gen_relation, gen_r);
            hs::Json out = hs::hamiltonian_to_json(hs::generate_instance(spec));
            // Record the generation parameters so the instance can be
            // reproduced exactly; consumers ignore the extra key.
            out["meta"] = {{"family", spec.family}, {"n", spec.n},    {"m", spec.m},
                           {"r", spec.r},           {"rank", spec.rank}, {"p", spec.edge_probability},
                           {"seed", spec.seed}};
            if (!gen_relation.empty()) out["meta"]["relation"] = gen_relation;
            emit(gen_out, out);
        } else if (*sparsify) {
            if (!sp_config.empty()) {
                long long millis = 0;
                const hs::Json config = hs::read_json_file(sp_config);
                const hs::Json report = run_config(config, &millis);
                emit(sp_out, report);
                if (!sp_out.empty()) {
                    // One bench-format row per persisted run.
                    const hs::Json inst =
                            config.contains("instance") ? config["instance"] : hs::Json::object();
                    std::ofstream csv(sp_out + ".csv");
                    csv << "family,n,m,eps,seed,support,pass,millis\n"
                        << inst.value("family", std::string("file")) << "," << inst.value("n", 0)
                        << "," << report["m"].get<int>() << "," << config["eps"].get<double>()
                        << "," << config["seed"].get<std::uint64_t>() << ","
                        << report["support"].get<int>() << ","
                        << (report["verification"]["pass"].get<bool>() ? 1 : 0) << "," << millis
                        << "\n";
                }
                return report["verification"]["pass"].get<bool>() ? 0 : 1;
            }
            if (sp_pipeline == "xor") {
                const hs::XorInstance inst = hs::xor_from_json(hs::read_json_file(sp_in));
                const hs::XorSparsifyResult res = hs::sparsify_xor_unbiased(inst, sp_eps, sp_seed);
                hs::Json weights = hs::Json::object();
                for (const auto& [i, wi] : res.weights.entries) weights[std::to_string(i)] = wi;
                emit(sp_out, hs::Json{{"support", res.weights.support()},
                                      {"total_weight", res.weights.total()},
                                      {"attempts", res.attempts},
                                      {"weights", weights}});
                return 0;
            }
            const hs::Hamiltonian h = hs::hamiltonian_from_json(hs::read_json_file(sp_in));
            const RunOutcome outcome = dispatch_pipeline(sp_pipeline, h, sp_eps, sp_seed);
            hs::Json report;
            report["support"] = outcome.weights.support();
            report["verification"] = hs::report_to_json(outcome.report);
            report["aux"] = outcome.aux;
            report["weights"] = hs::weights_to_json(outcome.weights);
            emit(sp_out, report);
            return outcome.report.pass ? 0 : 1;
        } else if (*verify) {
            const hs::Hamiltonian h = hs::hamiltonian_from_json(hs::read_json_file(vf_in));
            const hs::SparsifierWeights w = hs::weights_from_json(hs::read_json_file(vf_weights));
            const hs::SparsifierReport rep = hs::verify_sparsifier(h, w, vf_eps);
            emit(vf_out, hs::report_to_json(rep));
            return rep.pass ? 0 : 1;
        } else if (*partition) {
            const hs::Hamiltonian h = hs::hamiltonian_from_json(hs::read_json_file(pt_in));
            if (h.terms.empty()) throw std::invalid_argument("empty instance");
            std::vector<std::vector<int>> edges;
            for (const auto& t : h.terms) edges.push_back(t.tuple);
            emit(pt_out, hs::decomposition_to_json(
                                 hs::peel_partition(edges, h.terms[0].arity(), h.n)));
        } else if (*stream) {
            hs::StreamSparsifier s(st_n, st_eps / 10.0, st_seed);
            int u, v;
            double w;
            while (std::cin >> u >> v >> w) s.insert(u, v, w);
            emit(st_out, hs::graph_to_json(s.finish()));
        } else if (*nrd) {
            if (nrd_mode == "certify") {
                const hs::Hamiltonian h = hs::hamiltonian_from_json(hs::read_json_file(nrd_in));
                const hs::NrdCertificate cert = hs::is_non_redundant(h);
                emit(nrd_out,
                     hs::Json{{"verdict", cert.verdict == hs::NrdVerdict::NonRedundant
                                                   ? "non-redundant"
                                                   : "redundant"},
                              {"redundant_index", cert.redundant_index},
                              {"witnesses", cert.witnesses.size()}});
            } else if (nrd_mode == "construct-tensor") {
                // Balanced parts; rank-one diag(0,1) unary factors.
                std::vector<std::vector<int>> parts(nrd_r);
                for (int q = 1; q <= nrd_n; ++q) parts[(q - 1) % nrd_r].push_back(q);
                hs::Matrix factor = hs::Matrix::Zero(2, 2);
                factor(1, 1) = 1.0;
                const auto instance = hs::tensor_witness_instance(
                        std::vector<hs::Matrix>(nrd_r, factor), parts, nrd_n);
                const hs::NrdCertificate cert = hs::is_non_redundant(instance.hamiltonian);
                emit(nrd_out,
                     hs::Json{{"terms", instance.hamiltonian.size()},
                              {"witnesses", instance.witnesses.size()},
                              {"certified_non_redundant",
                               cert.verdict == hs::NrdVerdict::NonRedundant},
                              {"instance", hs::hamiltonian_to_json(instance.hamiltonian)}});
            } else if (nrd_mode == "classify-2qubit") {
                const hs::Json j = hs::read_json_file(nrd_in);
                hs::Hamiltonian h = hs::hamiltonian_from_json(j);
                const hs::Matrix m = h.terms.at(0).predicate;
                const auto nonsingular = hs::nonsingular_search(m);
                const auto tensor = hs::tensor_rank1_check(m);
                std::string klass = nonsingular ? "nonsingular"
                                   : tensor     ? "rank1-tensor"
                                                : "mixed-rank-tensor";
                emit(nrd_out, hs::Json{{"class", klass},
                                       {"nonsingular", static_cast<bool>(nonsingular)},
                                       {"rank1_tensor", static_cast<bool>(tensor)}});
            } else if (nrd_mode == "audit-generic") {
                const hs::Matrix m = hs::sample_random_psd(
                        hs::RandomPredicateSpec{nrd_r, nrd_rank, nrd_seed});
                const hs::Hamiltonian h =
                        hs::greedy_nonredundant_instance(m, nrd_r, nrd_n, nrd_seed);
                const hs::GenericAuditResult audit = hs::audit_automorphism_growth(h);
                emit(nrd_out, hs::Json{{"terms", h.size()},
                                       {"accepted_beyond_forest", audit.accepted},
                                       {"swaps_derived", audit.swaps_derived},
                                       {"group_orders", audit.group_orders},
                                       {"strictly_doubling", audit.strictly_doubling}});
            } else if (nrd_mode == "project") {
                const hs::Relation rel = parse_relation(nrd_relation, nrd_r);
                std::vector<hs::Literal> literals;
                std::stringstream ss(nrd_literals);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    hs::Literal l;
                    if (tok == "0")
                        l.kind = hs::Literal::Zero;
                    else if (tok == "1")
                        l.kind = hs::Literal::One;
                    else if (tok.size() >= 2 && tok[0] == 'x')
                        l = {hs::Literal::Var, std::stoi(tok.substr(1))};
                    else if (tok.size() >= 3 && tok[0] == '!' && tok[1] == 'x')
                        l = {hs::Literal::NegVar, std::stoi(tok.substr(2))};
                    else
                        throw std::invalid_argument("bad literal '" + tok + "'");
                    literals.push_back(l);
                }
                const hs::Relation proj = hs::project_relation(rel, literals, nrd_pool);
                std::vector<std::string> members;
                for (std::uint32_t t : proj.members) {
                    std::string s;
                    for (int k = proj.arity - 1; k >= 0; --k)
                        s.push_back(((t >> k) & 1u) ? '1' : '0');
                    members.push_back(s);
                }
                emit(nrd_out, hs::Json{{"arity", proj.arity}, {"members", members}});
            } else {
                throw std::invalid_argument("unknown nrd mode: " + nrd_mode);
            }
        } else if (*bench) {
            const hs::Json configs = hs::read_json_file(bn_config);
            std::ostringstream csv;
            csv << "family,n,m,eps,seed,support,pass,millis\n";
            for (const auto& config : configs) {
                long long millis = 0;
                const hs::Json report = run_config(config, &millis);
                const hs::Json& inst = config.at("instance");
                csv << inst.value("family", std::string("file")) << "," << inst.value("n", 0)
                    << "," << report["m"].get<int>() << "," << config["eps"].get<double>() << ","
                    << config["seed"].get<std::uint64_t>() << ","
                    << report["support"].get<int>() << ","
                    << (report["verification"]["pass"].get<bool>() ? 1 : 0) << "," << millis
                    << "\n";
            }
            if (bn_out.empty()) {
                std::cout << csv.str();
            } else {
                std::ofstream out(bn_out);
                out << csv.str();
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
