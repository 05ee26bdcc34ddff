// blockpar: counting, enumeration, simulation and analysis of block-parallel
// Boolean automata networks.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockpar/counting.hpp"
#include "blockpar/dynamics.hpp"
#include "blockpar/enumeration.hpp"
#include "blockpar/error.hpp"
#include "blockpar/export.hpp"
#include "blockpar/gadgets.hpp"

namespace bp = blockpar;
using nlohmann::json;

namespace {

enum ExitCode : int {
    kOk = 0,
    kOther = 1,
    kUsage = 2,
    kFileNotFound = 3,
    kParse = 4,
    kResourceCap = 5,
    kDomain = 6,
    kInvariant = 7,
};

struct FileNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FileNotFound("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Arguments shared by the simulation and analysis commands.
struct Inputs {
    std::string network;
    std::string schedule;
    std::string config;
    std::string target;
    std::string pattern;
    std::uint64_t cap_substeps = bp::kDefaultSubstepCap;
    unsigned max_automata = 20;
    unsigned threads = 1;

    bp::Limits limits() const {
        bp::Limits l;
        l.max_substeps = cap_substeps;
        l.max_automata = max_automata;
        l.threads = threads;
        return l;
    }

    bp::BooleanNetwork load_network() const { return bp::parse_network(read_file(network)); }

    /// Inline JSON when the argument starts with '[', a file path otherwise.
    bp::PartitionedOrder load_schedule(unsigned n) const {
        const auto first = schedule.find_first_not_of(" \t");
        if (first != std::string::npos && schedule[first] == '[') return bp::parse_schedule(schedule, n);
        return bp::parse_schedule(read_file(schedule), n);
    }

    bp::Configuration load_config(const std::string& bits, unsigned n, const char* flag) const {
        if (bits.empty()) throw bp::DomainError(std::string(flag) + " is required");
        return bp::Configuration::parse(bits, n);
    }

    std::vector<std::uint32_t> load_pattern() const {
        std::vector<std::uint32_t> succ;
        std::stringstream ss(pattern);
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                succ.push_back(static_cast<std::uint32_t>(std::stoul(item)));
            } catch (const std::exception&) {
                throw bp::ParseError("pattern entry '" + item + "' is not a vertex index");
            }
        }
        return succ;
    }
};

void add_inputs(CLI::App* cmd, Inputs& in, bool needs_config) {
    cmd->add_option("--network", in.network, "Network DSL file")->required();
    cmd->add_option("--schedule", in.schedule, "Schedule JSON file or inline list such as [[0],[1,2]]")->required();
    auto* config = cmd->add_option("--config", in.config, "Configuration bitstring, automaton 0 first");
    if (needs_config) config->required();
    cmd->add_option("--cap-substeps", in.cap_substeps, "Maximum substeps per step");
    cmd->add_option("--max-automata", in.max_automata, "Maximum n for full-graph analysis");
    cmd->add_option("--threads", in.threads, "Worker threads for transition graphs");
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

template <class F>
double seconds(F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

// Single-run timings of a reference Python implementation on a 2.8 GHz laptop;
// negative entries were reported only as "under 0.1 s".
struct ReferenceTiming {
    unsigned n;
    double bp, bp0, bpstar;
};
constexpr ReferenceTiming kReference[] = {
    {1, -1, -1, -1},           {2, -1, -1, -1},          {3, -1, -1, -1},
    {4, -1, -1, -1},           {5, -1, -1, -1},          {6, -1, -1, -1},
    {7, -1, 0.103, -1},        {8, 0.523, 0.996, 0.161}, {9, 6.17, 12.2, 1.51},
    {10, 84.0, 160.0, 16.3},   {11, 1272.0, 2311.0, 193.0},
    {12, 19658.0, 35366.0, 2709.0},
};

json reference_for(unsigned n, bp::ScheduleClass cls) {
    for (const auto& r : kReference) {
        if (r.n != n) continue;
        const double t = cls == bp::ScheduleClass::All ? r.bp : cls == bp::ScheduleClass::DynamicalEquality ? r.bp0 : r.bpstar;
        return t < 0 ? json("<0.1") : json(t);
    }
    return nullptr;
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw FileNotFound("cannot write '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

private:
    std::ofstream file_;
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-parallel Boolean automata networks"};
    app.require_subcommand(1);
    std::string report_path;
    app.add_option("--report", report_path, "Write a JSON run report to this file");

    json params = json::object();
    json result = json::object();

    // count
    unsigned count_max = 12;
    std::string count_format = "csv";
    auto* count = app.add_subcommand("count", "Sizes of BS, BP, BP0, BP* and BS∩BP for n = 1..n-max");
    count->add_option("n-max", count_max, "Largest n")->check(CLI::PositiveNumber);
    count->add_option("--format", count_format)->check(CLI::IsMember({"csv", "json"}));

    // enum
    unsigned enum_n = 0;
    std::string enum_class = "bp", enum_partition, enum_out;
    std::uint64_t enum_limit = 0;
    unsigned enum_threads = 1;
    bool enum_count_only = false;
    auto* enumerate = app.add_subcommand("enum", "Stream one schedule per line");
    enumerate->add_option("n", enum_n, "Number of automata")->required()->check(CLI::PositiveNumber);
    enumerate->add_option("--class", enum_class, "bp, bp0 or bpstar")->check(CLI::IsMember({"bp", "bp0", "bpstar"}));
    enumerate->add_option("--limit", enum_limit, "Stop after this many schedules (0 = all)");
    enumerate->add_option("--partition", enum_partition, "Only schedules with this support, e.g. 1+2+2");
    enumerate->add_option("--out", enum_out, "Output file (default stdout)");
    enumerate->add_option("--threads", enum_threads, "Workers for --count-only");
    enumerate->add_flag("--count-only", enum_count_only, "Count without printing schedules");

    // step / trace / dynamics / check
    Inputs in;
    auto* step = app.add_subcommand("step", "Apply one step and print the image");
    add_inputs(step, in, true);
    auto* trace = app.add_subcommand("trace", "Print the configuration after every substep");
    add_inputs(trace, in, true);

    std::string dyn_format = "json", dyn_out;
    auto* dynamics = app.add_subcommand("dynamics", "Export the full transition graph");
    add_inputs(dynamics, in, false);
    dynamics->add_option("--format", dyn_format)->check(CLI::IsMember({"json", "dot", "csv"}));
    dynamics->add_option("--out", dyn_out, "Output file (default stdout)");

    std::string property;
    auto* check = app.add_subcommand("check", "Decide a property; prints true or false");
    check->add_option("property", property,
                      "bijective, identity, constant, fixed-point, limit-cycle:K, reach, preimage or subdynamics")
        ->required();
    add_inputs(check, in, false);
    check->add_option("--target", in.target, "Target configuration for reach and preimage");
    check->add_option("--pattern", in.pattern, "Successor list of a functional graph, e.g. 1,0");

    // gadget
    std::string gadget_kind, gadget_out;
    unsigned gadget_n = 3;
    auto* gadget = app.add_subcommand("gadget", "Build a gadget network and schedule");
    gadget->add_option("kind", gadget_kind)->required()->check(CLI::IsMember({"counter"}));
    gadget->add_option("--n", gadget_n, "Counter width")->check(CLI::Range(2u, 64u));
    gadget->add_option("--out", gadget_out, "Write PREFIX.net and PREFIX.schedule.json");

    // bench
    unsigned bench_max = 9, bench_runs = 3, bench_threads = 1;
    std::vector<std::string> bench_classes{"bp", "bp0", "bpstar"};
    auto* bench = app.add_subcommand("bench", "Time full enumerations against reference timings");
    bench->add_option("n-max", bench_max)->check(CLI::PositiveNumber);
    bench->add_option("--runs", bench_runs)->check(CLI::PositiveNumber);
    bench->add_option("--threads", bench_threads);
    bench->add_option("--class", bench_classes)->check(CLI::IsMember({"bp", "bp0", "bpstar"}));

    // random-network
    unsigned rnd_n = 3, rnd_depth = 4;
    std::uint64_t rnd_seed = 0;
    auto* random = app.add_subcommand("random-network", "Print a seeded random network");
    random->add_option("n", rnd_n)->required()->check(CLI::PositiveNumber);
    random->add_option("--seed", rnd_seed);
    random->add_option("--depth", rnd_depth);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    const auto* sub = app.get_subcommands().front();
    params["command"] = sub->get_name();
    int status = kOk;
    const auto start = std::chrono::steady_clock::now();

    try {
        if (sub == count) {
            params["n_max"] = count_max;
            json rows = json::array();
            if (count_format == "csv") std::cout << "n,bs,bp,bp0,bp_star,bs_inter_bp\n";
            for (unsigned n = 1; n <= count_max; ++n) {
                const std::string cols[] = {bp::count_bs(n).str(), bp::count_bp(n).str(), bp::count_bp0(n).str(),
                                            bp::count_bp_star(n).str(), bp::count_bs_inter_bp(n).str()};
                if (count_format == "csv") {
                    std::cout << n;
                    for (const auto& c : cols) std::cout << ',' << c;
                    std::cout << '\n';
                }
                rows.push_back({{"n", n}, {"bs", cols[0]}, {"bp", cols[1]}, {"bp0", cols[2]}, {"bp_star", cols[3]},
                                {"bs_inter_bp", cols[4]}});
            }
            if (count_format == "json") std::cout << rows.dump(2) << '\n';
            result["rows"] = rows;
        } else if (sub == enumerate) {
            const auto cls = bp::parse_schedule_class(enum_class);
            params.update({{"n", enum_n}, {"class", enum_class}, {"limit", enum_limit}, {"partition", enum_partition}});
            std::uint64_t emitted = 0;
            if (enum_count_only && enum_partition.empty() && enum_limit == 0) {
                emitted = bp::count_by_enumeration(enum_n, cls, enum_threads);
            } else {
                auto stream = enum_partition.empty()
                                  ? bp::ScheduleStream(enum_n, cls)
                                  : bp::ScheduleStream(enum_n, cls, bp::Partition::parse(enum_partition));
                Output out(enum_out);
                std::string buffer;
                while ((enum_limit == 0 || emitted < enum_limit) && stream.advance()) {
                    ++emitted;
                    if (enum_count_only) continue;
                    buffer += bp::serialize_schedule(stream.current());
                    buffer += '\n';
                    if (buffer.size() > (1u << 16)) {
                        out.stream() << buffer;
                        buffer.clear();
                    }
                }
                out.stream() << buffer << std::flush;
            }
            std::cerr << "count: " << emitted << '\n';
            result["count"] = emitted;
        } else if (sub == step || sub == trace || sub == dynamics || sub == check) {
            const auto f = in.load_network();
            const auto mu = in.load_schedule(f.size());
            const auto limits = in.limits();
            params.update({{"network", in.network}, {"schedule", bp::serialize_schedule(mu)}, {"n", f.size()}});
            if (!in.config.empty()) params["config"] = in.config;

            if (sub == step) {
                const auto y = bp::step(f, mu, in.load_config(in.config, f.size(), "--config"), limits);
                std::cout << y.to_string() << '\n';
                result["image"] = y.to_string();
            } else if (sub == trace) {
                const auto states = bp::step_trace(f, mu, in.load_config(in.config, f.size(), "--config"), limits);
                for (const auto& x : states) std::cout << x.to_string() << '\n';
                result["substeps"] = states.size() - 1;
                result["image"] = states.back().to_string();
            } else if (sub == dynamics) {
                const auto g = bp::transition_graph(f, mu, limits);
                Output out(dyn_out);
                if (dyn_format == "dot") {
                    out.stream() << bp::to_dot(g);
                } else if (dyn_format == "json") {
                    out.stream() << bp::to_json(g, 2) << '\n';
                } else {
                    out.stream() << "config,successor\n";
                    for (std::uint64_t x = 0; x < g.state_count(); ++x)
                        out.stream() << bp::Configuration::from_index(f.size(), x).to_string() << ','
                                     << bp::Configuration::from_index(f.size(), g.successor(x)).to_string() << '\n';
                }
                result["cycle_lengths"] = g.cycle_lengths();
                if (!dyn_out.empty()) result["file"] = dyn_out;
            } else {
                params["property"] = property;
                bool answer = false;
                std::optional<bp::Configuration> witness;
                if (property == "bijective") {
                    answer = bp::is_bijective(f, mu, limits);
                } else if (property == "identity") {
                    answer = bp::is_identity(f, mu, limits);
                } else if (property == "constant") {
                    witness = bp::is_constant(f, mu, limits);
                    answer = witness.has_value();
                } else if (property == "fixed-point") {
                    if (!in.config.empty()) {
                        answer = bp::is_fixed_point(f, mu, in.load_config(in.config, f.size(), "--config"), limits);
                    } else {
                        const auto fps = bp::fixed_points(f, mu, limits);
                        answer = !fps.empty();
                        if (answer) witness = fps.front();
                    }
                } else if (property.rfind("limit-cycle:", 0) == 0) {
                    std::uint64_t k = 0;
                    try {
                        k = std::stoull(property.substr(12));
                    } catch (const std::exception&) {
                        throw bp::ParseError("limit-cycle expects a period, as in limit-cycle:2");
                    }
                    answer = bp::has_periodic_point(f, mu, k, limits);
                } else if (property == "reach") {
                    answer = bp::reachable(f, mu, in.load_config(in.config, f.size(), "--config"),
                                           in.load_config(in.target, f.size(), "--target"), limits);
                } else if (property == "preimage") {
                    witness = bp::has_preimage(f, mu, in.load_config(in.target, f.size(), "--target"), limits);
                    answer = witness.has_value();
                } else if (property == "subdynamics") {
                    if (in.pattern.empty()) throw bp::DomainError("--pattern is required");
                    answer = bp::subdynamics(f, mu, in.load_pattern(), limits);
                } else {
                    throw bp::DomainError("unknown property '" + property + "'");
                }
                std::cout << bool_text(answer) << '\n';
                if (witness) std::cout << witness->to_string() << '\n';
                result["answer"] = answer;
                if (witness) result["witness"] = witness->to_string();
            }
        } else if (sub == gadget) {
            params.update({{"kind", gadget_kind}, {"n", gadget_n}});
            const auto g = bp::counter_gadget(gadget_n);
            const auto files = bp::export_gadget(g);
            if (gadget_out.empty()) {
                std::cout << "# schedule: " << files.schedule << files.network;
            } else {
                std::ofstream(gadget_out + ".net") << files.network;
                std::ofstream(gadget_out + ".schedule.json") << files.schedule;
                result["files"] = {gadget_out + ".net", gadget_out + ".schedule.json"};
            }
            result["automata"] = g.network.size();
            result["substeps"] = g.schedule.substep_count().str();
        } else if (sub == bench) {
            params.update({{"n_max", bench_max}, {"runs", bench_runs}, {"threads", bench_threads}});
            json rows = json::array();
            std::cout << "n,class,count,median_s,reference_s,speedup\n";
            for (unsigned n = 1; n <= bench_max; ++n) {
                for (const auto& name : bench_classes) {
                    const auto cls = bp::parse_schedule_class(name);
                    std::vector<double> times;
                    std::uint64_t total = 0;
                    for (unsigned r = 0; r < bench_runs; ++r)
                        times.push_back(seconds([&] { total = bp::count_by_enumeration(n, cls, bench_threads); }));
                    std::sort(times.begin(), times.end());
                    const double median = times[times.size() / 2];
                    const json ref = reference_for(n, cls);
                    std::string speedup;
                    if (ref.is_number()) speedup = std::to_string(ref.get<double>() / std::max(median, 1e-9));
                    std::cout << n << ',' << name << ',' << total << ',' << median << ','
                              << (ref.is_null() ? std::string() : ref.is_string() ? ref.get<std::string>()
                                                                                   : std::to_string(ref.get<double>()))
                              << ',' << speedup << '\n'
                              << std::flush;
                    rows.push_back({{"n", n}, {"class", name}, {"count", total}, {"median_s", median},
                                    {"reference_s", ref}});
                }
            }
            result["rows"] = rows;
        } else if (sub == random) {
            params.update({{"n", rnd_n}, {"seed", rnd_seed}, {"depth", rnd_depth}});
            std::mt19937_64 rng(rnd_seed);
            std::cout << bp::serialize_network(bp::random_network(rnd_n, rng, rnd_depth));
        }
    } catch (const FileNotFound& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = kFileNotFound;
    } catch (const bp::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        status = kParse;
    } catch (const bp::ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        status = kResourceCap;
    } catch (const bp::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = kDomain;
    } catch (const bp::InvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        status = kInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        status = kOther;
    }

    if (!report_path.empty()) {
        const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        json report{{"command", sub->get_name()},
                    {"parameters", params},
                    {"duration_s", elapsed},
                    {"result", result},
                    {"exit_status", status}};
        std::ofstream(report_path) << report.dump(2) << '\n';
    }
    return status;
}
