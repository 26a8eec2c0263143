// wvlt: build, query, convert, verify and benchmark wavelet trees/matrices.

#include <wvlt/wvlt.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace wvlt;

namespace {

enum exit_code : int { ok = 0, usage = 1, mismatch = 2, io_failure = 3 };

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct input_options {
    std::string path;
    std::string alphabet = "byte-effective";
    std::string structure = "wm";
};

alphabet_mode alphabet_or_throw(const std::string& s) {
    auto m = parse_alphabet(s);
    if(!m) throw usage_error("unknown alphabet '" + s + "'");
    return *m;
}

structure_kind kind_or_throw(const std::string& s) {
    if(s == "wt") return structure_kind::tree;
    if(s == "wm") return structure_kind::matrix;
    throw usage_error("unknown structure '" + s + "' (expected wt or wm)");
}

const char* kind_name(structure_kind k) { return k == structure_kind::tree ? "wt" : "wm"; }

// builds with either the byte or the word symbol type
template<typename Fn>
decltype(auto) with_symbols(const ingested_text& t, Fn&& fn) {
    return std::visit([&](const auto& v) -> decltype(auto) {
        using sym = typename std::decay_t<decltype(v)>::value_type;
        return fn(std::span<const sym>(v));
    }, t.symbols);
}

level_bits build_levels(const ingested_text& t, structure_kind kind, const std::string& algo, std::size_t threads) {
    const auto sigma = t.structure_sigma();
    if(algo == "oracle") {
        oracle::oracle_config cfg{std::numeric_limits<std::uint64_t>::max(), std::numeric_limits<std::uint64_t>::max()};
        return with_symbols(t, [&](auto s) {
            return kind == structure_kind::tree ? oracle::naive_wt(s, sigma, cfg) : oracle::naive_wm(s, sigma, cfg);
        });
    }
    auto a = parse_algorithm(algo);
    if(!a) throw usage_error("unknown algorithm '" + algo + "'");
    return with_symbols(t, [&](auto s) { return construct(s, sigma, construction_plan{kind, *a, threads}); });
}

index_file load_index(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if(!in) throw io_error("cannot open " + path);
    try {
        return read_index(in);
    } catch(const io::format_error& e) {
        throw io_error(path + ": " + e.what());
    }
}

void save_index(const std::string& path, const index_file& f) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if(!out) throw io_error("cannot write " + path);
    write_index(out, f);
    out.flush();
    if(!out) throw io_error("error writing " + path);
}

int cmd_build(const input_options& in, const std::string& algo, std::size_t threads, const std::string& output) {
    const auto text = ingest_file(in.path, alphabet_or_throw(in.alphabet));
    const auto kind = kind_or_throw(in.structure);
    index_file f{kind, text.size(), text.structure_sigma(), build_levels(text, kind, algo, threads)};
    save_index(output, f);
    std::cerr << "built " << kind_name(kind) << ": n=" << f.n << " sigma=" << f.sigma
              << " levels=" << f.bits.levels.size() << "\n";
    return ok;
}

int cmd_query(const std::string& index, const std::string& op, std::optional<std::uint64_t> symbol,
              std::optional<std::uint64_t> pos, std::optional<std::uint64_t> ordinal) {
    const auto s = load_structure(load_index(index));
    return std::visit([&](const auto& st) -> int {
        if(op == "access") {
            if(!pos) throw usage_error("access needs --pos");
            if(*pos >= st.size()) throw usage_error("position out of range");
            std::cout << st.access(*pos) << "\n";
        } else if(op == "rank") {
            if(!symbol || !pos) throw usage_error("rank needs --symbol and --pos");
            if(*pos > st.size()) throw usage_error("position out of range");
            if(*symbol >= st.sigma()) throw usage_error("symbol out of range");
            std::cout << st.rank(*symbol, *pos) << "\n";
        } else if(op == "select") {
            if(!symbol || !ordinal) throw usage_error("select needs --symbol and --ordinal");
            if(*symbol >= st.sigma()) throw usage_error("symbol out of range");
            auto r = st.select(*symbol, *ordinal);
            if(!r) throw usage_error("symbol " + std::to_string(*symbol) + " has no occurrence " + std::to_string(*ordinal));
            std::cout << *r << "\n";
        } else {
            throw usage_error("unknown op '" + op + "'");
        }
        return ok;
    }, s);
}

int cmd_convert(const std::string& index, const std::string& output) {
    auto f = load_index(index);
    if(f.kind != structure_kind::tree) throw usage_error(index + " is not a wavelet tree");
    const level_wavelet_tree wt(f.n, f.sigma, std::move(f.bits.levels));
    save_index(output, to_index(convert_wt_to_wm(wt)));
    return ok;
}

int cmd_verify(const std::string& index, const input_options& in) {
    const auto f = load_index(index);
    const auto text = ingest_file(in.path, alphabet_or_throw(in.alphabet));
    if(text.size() != f.n || text.structure_sigma() != f.sigma) {
        std::cout << "MISMATCH header: index n=" << f.n << " sigma=" << f.sigma << ", input n=" << text.size()
                  << " sigma=" << text.structure_sigma() << "\n";
        return mismatch;
    }
    const auto expected = build_levels(text, f.kind, "oracle", 1);
    for(std::size_t l = 0; l < expected.levels.size(); ++l) {
        const auto& want = expected.levels[l];
        const auto& got = f.bits.levels[l];
        for(std::size_t i = 0; i < want.size(); ++i) {
            if(want[i] != got[i]) {
                std::cout << "MISMATCH level " << l << " bit " << i << ": expected " << want[i] << ", found "
                          << got[i] << "\n";
                return mismatch;
            }
        }
    }
    for(std::size_t l = 0; l < expected.zeros.size(); ++l) {
        if(expected.zeros[l] != f.bits.zeros[l]) {
            std::cout << "MISMATCH zeros " << l << ": expected " << expected.zeros[l] << ", found "
                      << f.bits.zeros[l] << "\n";
            return mismatch;
        }
    }
    std::cout << "OK\n";
    return ok;
}

struct bench_options {
    std::vector<std::string> inputs;
    std::string alphabet = "byte-effective";
    std::vector<std::string> structures{"wt", "wm"};
    std::vector<std::string> algos{"pc", "ps", "levelpar", "ddpc", "ddps"};
    std::vector<std::size_t> threads{1};
    unsigned runs = 5;
    std::string csv;
    bool with_total = false;
};

int cmd_bench(const bench_options& o) {
    if(o.runs % 2 == 0) throw usage_error("--runs must be odd");
    const auto mode = alphabet_or_throw(o.alphabet);
    for(const auto& a : o.algos)
        if(!parse_algorithm(a)) throw usage_error("unknown algorithm '" + a + "'");
    std::vector<structure_kind> kinds;
    for(const auto& s : o.structures) kinds.push_back(kind_or_throw(s));

    std::ofstream file;
    if(!o.csv.empty()) {
        file.open(o.csv, std::ios::trunc);
        if(!file) throw io_error("cannot write " + o.csv);
    }
    std::ostream& out = o.csv.empty() ? std::cout : file;
    out << "input,kind,algo,threads,runs,median_seconds,aux_bytes_per_input_byte";
    if(o.with_total) out << ",total_bytes_per_input_byte";
    out << "\n";

    for(const auto& path : o.inputs) {
        const auto text = ingest_file(path, mode);
        const double in_bytes = static_cast<double>(std::max<std::size_t>(1, text.input_bytes));
        for(auto kind : kinds) {
            for(const auto& algo : o.algos) {
                for(auto p : o.threads) {
                    std::vector<double> times;
                    std::int64_t peak = 0;
                    std::uint64_t out_bytes = 0;
                    for(unsigned r = 0; r < o.runs; ++r) {
                        aux_stats().reset();
                        const auto t0 = std::chrono::steady_clock::now();
                        auto bits = build_levels(text, kind, algo, p);
                        const auto t1 = std::chrono::steady_clock::now();
                        times.push_back(std::chrono::duration<double>(t1 - t0).count());
                        peak = std::max(peak, aux_stats().peak.load());
                        out_bytes = 0;
                        for(const auto& l : bits.levels) out_bytes += l.size_in_bytes();
                        out_bytes += bits.zeros.size() * sizeof(std::uint64_t);
                    }
                    std::nth_element(times.begin(), times.begin() + times.size() / 2, times.end());
                    const double median = times[times.size() / 2];
                    out << path << ',' << kind_name(kind) << ',' << algo << ',' << p << ',' << o.runs << ','
                        << std::fixed << std::setprecision(6) << median << ','
                        << static_cast<double>(peak) / in_bytes;
                    if(o.with_total) {
                        const double symbols = static_cast<double>(text.size()) *
                                               (text.symbols.index() == 0 ? 1.0 : 4.0);
                        out << ',' << (static_cast<double>(peak + static_cast<std::int64_t>(out_bytes)) + symbols) / in_bytes;
                    }
                    out << std::defaultfloat << "\n";
                    out.flush();
                }
            }
        }
    }
    if(!out) throw io_error("error writing csv");
    return ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet tree and wavelet matrix construction"};
    app.require_subcommand(1);

    const std::vector<std::string> algo_names{"pc", "ps", "levelpar", "ddpc", "ddps", "oracle"};
    auto add_input = [](CLI::App* sub, input_options& in) {
        sub->add_option("--input", in.path, "input text file")->required();
        sub->add_option("--alphabet", in.alphabet, "byte | byte-effective | words")
            ->check(CLI::IsMember({"byte", "byte-effective", "words"}));
    };

    input_options build_in;
    std::string build_algo = "pc", build_out;
    std::size_t build_threads = 1;
    auto* build = app.add_subcommand("build", "construct and serialize an index");
    add_input(build, build_in);
    build->add_option("--structure", build_in.structure, "wt | wm")->check(CLI::IsMember({"wt", "wm"}));
    build->add_option("--algo", build_algo, "construction algorithm")->check(CLI::IsMember(algo_names));
    build->add_option("--threads", build_threads, "worker count")->check(CLI::PositiveNumber);
    build->add_option("--output", build_out, "index file to write")->required();

    std::string q_index, q_op;
    std::optional<std::uint64_t> q_symbol, q_pos, q_ordinal;
    auto* query = app.add_subcommand("query", "answer one access/rank/select query");
    query->add_option("--index", q_index)->required();
    query->add_option("--op", q_op, "access | rank | select")->required()
        ->check(CLI::IsMember({"access", "rank", "select"}));
    query->add_option("--symbol", q_symbol);
    query->add_option("--pos", q_pos);
    query->add_option("--ordinal", q_ordinal, "1-based occurrence for select");

    std::string c_index, c_out;
    auto* convert = app.add_subcommand("convert", "turn a wavelet tree index into a wavelet matrix index");
    convert->add_option("--index", c_index)->required();
    convert->add_option("--output", c_out)->required();

    std::string v_index;
    input_options v_in;
    auto* verify = app.add_subcommand("verify", "compare an index against the reference construction");
    verify->add_option("--index", v_index)->required();
    add_input(verify, v_in);

    bench_options b;
    auto* bench = app.add_subcommand("bench", "time construction, median of --runs");
    bench->add_option("--input", b.inputs, "input files")->required();
    bench->add_option("--alphabet", b.alphabet)->check(CLI::IsMember({"byte", "byte-effective", "words"}));
    bench->add_option("--structure", b.structures, "wt and/or wm")->check(CLI::IsMember({"wt", "wm"}));
    bench->add_option("--algo", b.algos)->check(CLI::IsMember({"pc", "ps", "levelpar", "ddpc", "ddps"}));
    bench->add_option("--threads", b.threads)->check(CLI::PositiveNumber);
    bench->add_option("--runs", b.runs, "repetitions (odd)")->check(CLI::PositiveNumber);
    bench->add_option("--csv", b.csv, "csv output path (default stdout)");
    bench->add_flag("--with-total", b.with_total, "append input+output+aux bytes per input byte");

    try {
        app.parse(argc, argv);
    } catch(const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch(const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    try {
        if(*build) return cmd_build(build_in, build_algo, build_threads, build_out);
        if(*query) return cmd_query(q_index, q_op, q_symbol, q_pos, q_ordinal);
        if(*convert) return cmd_convert(c_index, c_out);
        if(*verify) return cmd_verify(v_index, v_in);
        if(*bench) return cmd_bench(b);
    } catch(const usage_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch(const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return io_failure;
    } catch(const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return io_failure;
    } catch(const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    }
    return usage;
}
