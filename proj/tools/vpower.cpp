#include "vpower/bounds.hpp"
#include "vpower/ilp.hpp"
#include "vpower/inverse.hpp"
#include "vpower/parametric.hpp"
#include "vpower/shortening.hpp"
#include "vpower/suites.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace vpower;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string slurp_or_text(const std::string& arg) {
    std::error_code ec;
    if (!arg.empty() && std::filesystem::is_regular_file(arg, ec)) {
        std::ifstream in(arg);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return arg;
}

std::vector<Q> parse_sigma_text(const std::string& raw) {
    std::string text = slurp_or_text(raw);
    auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        auto j = nlohmann::json::parse(text);
        text = j.at("sigma").dump();
    }
    std::vector<Q> out;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) out.push_back(parse_rational(token));
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == '[' || ch == ']' || ch == '(' ||
            ch == ')')
            flush();
        else if (ch != '"')
            token.push_back(ch);
    }
    flush();
    if (out.empty()) throw UsageError("empty sigma");
    return out;
}

std::string vector_json(const PowerVector& v) {
    nlohmann::ordered_json j;
    j["index"] = v.index.name();
    j["normalized"] = v.index.normalized;
    j["values"] = nlohmann::ordered_json::array();
    for (const auto& x : v.values) j["values"].push_back(to_string(x));
    return j.dump();
}

int default_threads() {
    if (const char* env = std::getenv("VPOWER_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact power indices, approximation bounds and inverse problems for binary voting games"};
    app.require_subcommand(1);
    int threads = default_threads();
    app.add_option("--threads", threads, "worker threads (default $VPOWER_THREADS or 1)")->check(CLI::PositiveNumber);

    // index
    auto* cmd_index = app.add_subcommand("index", "compute a power index");
    std::string game_arg, index_name = "bz";
    bool normalized = false, as_json = false;
    cmd_index->add_option("--game", game_arg, "game JSON file, JSON text or [q;w1,...,wn]")->required();
    cmd_index->add_option("--index", index_name, "index name, e.g. bz, js, pbinomial:1/3");
    cmd_index->add_flag("--normalized", normalized);
    cmd_index->add_flag("--json", as_json, "print a PowerVector JSON object");

    // round
    auto* cmd_round = app.add_subcommand("round", "shorten a game");
    int k = 1;
    std::string p_arg;
    bool up = false;
    cmd_round->add_option("--game", game_arg)->required();
    cmd_round->add_option("--k", k)->required();
    auto* p_opt = cmd_round->add_option("--p", p_arg, "(p,k)-rounding threshold");
    cmd_round->add_flag("--up", up, "k-up-rounding")->excludes(p_opt);

    // bound
    auto* cmd_bound = app.add_subcommand("bound", "lower bound on the inverse-problem deviation");
    std::string sigma_arg, class_name = "simple";
    cmd_bound->add_option("--sigma", sigma_arg)->required();
    cmd_bound->add_option("--index", index_name);
    cmd_bound->add_option("--k", k)->required();
    cmd_bound->add_option("--class", class_name);
    cmd_bound->add_flag("--json", as_json);

    // inverse and emit-ilp share the instance options
    auto* cmd_inverse = app.add_subcommand("inverse", "solve the inverse problem at desk scale");
    auto* cmd_emit = app.add_subcommand("emit-ilp", "write the ILP model in LP format");
    int n = 0;
    std::string norm_name = "l1", method = "exhaustive", tol_arg = "1/1024", out_path, alpha_arg;
    bool absolute = false, proper = false, strong = false, tijs_unique = false;
    for (auto* c : {cmd_inverse, cmd_emit}) {
        c->add_option("--sigma", sigma_arg, "target vector, or an instance JSON")->required();
        c->add_option("--index", index_name);
        c->add_option("--class", class_name);
        c->add_option("--n", n, "voters; sigma is padded with zeros");
        c->add_option("--norm", norm_name, "l1 or linf");
        c->add_flag("--proper", proper);
        c->add_flag("--strong", strong);
    }
    cmd_inverse->add_flag("--absolute", absolute, "compare the absolute index instead of the normalized one");
    cmd_inverse->add_option("--method", method)->check(CLI::IsMember({"exhaustive", "bisect"}));
    cmd_inverse->add_option("--tol", tol_arg, "bisection tolerance");
    cmd_emit->add_option("--alpha", alpha_arg, "normalized mode: feasibility model for deviation <= alpha");
    cmd_emit->add_option("--out", out_path);
    cmd_emit->add_flag("--tijs-unique-mwc", tijs_unique, "emit the unique-MWC encoding for tijs");

    // parametric
    auto* cmd_param = app.add_subcommand("parametric", "closed forms against brute force on the parametric family");
    int pk = 2, pl = 1, pm = 1, pn = 1;
    cmd_param->add_option("--k", pk)->required();
    cmd_param->add_option("--l", pl);
    cmd_param->add_option("--m", pm)->required();
    cmd_param->add_option("--n", pn)->required();
    cmd_param->add_option("--index", index_name, "js, ssi or pbinomial:<p>");

    // enumerate
    auto* cmd_enum = app.add_subcommand("enumerate", "list the games of a class");
    bool count_only = false;
    cmd_enum->add_option("--n", n)->required();
    cmd_enum->add_option("--class", class_name);
    cmd_enum->add_flag("--count", count_only);
    cmd_enum->add_flag("--proper", proper);
    cmd_enum->add_flag("--strong", strong);

    // verify
    auto* cmd_verify = app.add_subcommand("verify", "run a named invariant suite");
    std::string suite = "all";
    int max_n = 0;
    bool verbose = false;
    cmd_verify->add_option("--suite", suite, "suite name or all");
    cmd_verify->add_option("--max-n", max_n, "override the suite's size parameter");
    cmd_verify->add_flag("--verbose,-v", verbose);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::ostream& out = std::cout;
    try {
        if (*cmd_index) {
            IndexId id = parse_index(index_name).with_normalized(normalized);
            auto v = power_index(parse_game_text(slurp_or_text(game_arg)), id);
            out << (as_json ? vector_json(v) : join(v.values)) << "\n";
            return 0;
        }
        if (*cmd_round) {
            Game g = parse_game_text(slurp_or_text(game_arg));
            ShorteningId sid;
            sid.k = k;
            if (up) sid.tag = ShorteningTag::KUpRounding;
            else if (!p_arg.empty()) {
                sid.tag = ShorteningTag::PKRounding;
                sid.p = parse_rational(p_arg);
            }
            out << game_to_json(shorten(g, sid)) << "\n";
            return 0;
        }
        if (*cmd_bound) {
            auto sigma = parse_sigma_text(sigma_arg);
            IndexId id = parse_index(index_name).with_normalized(true);
            auto b = approximation_lower_bound(sigma, k, id, parse_game_class(class_name));
            if (as_json) {
                nlohmann::ordered_json j;
                j["emitted"] = b.emitted;
                if (!b.emitted) j["reason"] = b.reason;
                j["value"] = to_string(b.value);
                j["path"] = b.corollary_path ? "corollary" : "theorem";
                j["lambda"] = to_string(b.lambda);
                j["alpha"] = to_string(b.alpha);
                j["beta"] = to_string(b.beta);
                j["f1"] = to_string(b.f1);
                j["f2"] = to_string(b.f2);
                out << j.dump() << "\n";
            } else if (b.emitted) {
                out << to_string(b.value) << "\n";
            } else {
                out << "none\n";
                std::cerr << b.reason << "\n";
            }
            return 0;
        }
        if (*cmd_inverse || *cmd_emit) {
            InverseInstance inst;
            std::string text = slurp_or_text(sigma_arg);
            auto first = text.find_first_not_of(" \t\r\n");
            bool from_json = first != std::string::npos && text[first] == '{';
            if (from_json) {
                inst = parse_instance_json(text);
            } else {
                inst.sigma = parse_sigma_text(text);
                inst.index = parse_index(index_name);
                inst.cls = parse_game_class(class_name);
                inst.norm = parse_norm(norm_name);
            }
            inst.proper = inst.proper || proper;
            inst.strong = inst.strong || strong;
            if (n > 0) {
                if (n < inst.n()) throw UsageError("--n is smaller than the length of sigma");
                inst.sigma.resize(n, Q(0));
            }
            if (sum(inst.sigma) != 1) throw UsageError("sigma must sum to 1");
            if (*cmd_inverse) {
                if (!from_json) inst.index.normalized = !absolute;
                InverseSolution sol;
                ExhaustiveOptions eo{threads};
                if (method == "bisect")
                    sol = bisection_normalized(inst, parse_rational(tol_arg), exhaustive_oracle(inst, eo));
                else
                    sol = exhaustive_inverse(inst, eo);
                out << solution_to_json(sol) << "\n";
                return 0;
            }
            std::optional<Q> alpha;
            if (!alpha_arg.empty()) alpha = parse_rational(alpha_arg);
            inst.index.normalized = alpha.has_value();
            ilp::BuildOptions bo;
            bo.tijs_unique_mwc = tijs_unique;
            auto text_lp = ilp::emit_lp(ilp::build_ilp(inst, alpha, bo));
            if (out_path.empty()) {
                out << text_lp;
            } else {
                std::ofstream f(out_path);
                if (!f) throw std::runtime_error("cannot write " + out_path);
                f << text_lp;
            }
            return 0;
        }
        if (*cmd_param) {
            ParametricParams p{pk, pl, pm, pn};
            p.validate();
            if (p.voters() > 20) throw UsageError("brute force needs k+n <= 20");
            IndexId id = parse_index(index_name);
            bool mismatch = false;
            for (Variant v : {Variant::Original, Variant::AllLosing, Variant::AllWinning}) {
                TypedTriple closed;
                switch (id.tag) {
                    case IndexTag::JS: closed = johnston_closed_form(p, v); break;
                    case IndexTag::SSI: closed = ssi_closed_form(p, v); break;
                    case IndexTag::PBinomial: closed = psi_p_closed_form(p, v, id.binomial_p); break;
                    case IndexTag::Bz: closed = psi_p_closed_form(p, v, Q(1, 2)); break;
                    default: throw UsageError("closed forms exist for js, ssi, bz and pbinomial:<p>");
                }
                Game g = build_game(with_variant(p, v));
                IndexId brute_id = id.tag == IndexTag::Bz ? IndexId::pbinomial(Q(1, 2)) : id;
                auto brute = collapse(p, power_index(g, brute_id).values);
                bool same = brute && *brute == closed;
                mismatch = mismatch || !same;
                auto show = [](const TypedTriple& t) {
                    return "(" + to_string(t.head) + "," + to_string(t.tail_head) + "," + to_string(t.ocean) + ")";
                };
                out << to_string(v) << " closed=" << show(closed)
                    << " brute=" << (brute ? show(*brute) : std::string("not-typed")) << (same ? " match" : " MISMATCH")
                    << "\n";
            }
            return mismatch ? 1 : 0;
        }
        if (*cmd_enum) {
            auto games = enumerate_games(n, parse_game_class(class_name));
            std::size_t count = 0;
            for (const auto& g : games) {
                if (proper && !is_proper(g)) continue;
                if (strong && !is_strong(g)) continue;
                ++count;
                if (!count_only) out << game_to_json(g) << "\n";
            }
            if (count_only) out << count << "\n";
            return 0;
        }
        if (*cmd_verify) {
            std::vector<std::string> names;
            if (suite == "all") names = suite_names();
            else names.push_back(suite);
            bool ok = true;
            for (const auto& name : names) {
                SuiteOptions so;
                so.max_n = max_n;
                so.threads = threads;
                so.log = verbose ? &out : nullptr;
                auto r = run_suite(name, so);
                out << r.summary << "\n";
                for (const auto& f : r.failures) out << "  failure: " << f << "\n";
                ok = ok && r.ok;
            }
            return ok ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
