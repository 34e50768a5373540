#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sbc/blocks.hpp"
#include "sbc/codec.hpp"
#include "sbc/compose.hpp"
#include "sbc/design.hpp"
#include "sbc/errors.hpp"
#include "sbc/pbd.hpp"
#include "sbc/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUnavailable = 2;
constexpr int kExitExhausted = 3;
constexpr int kExitBudget = 4;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spill(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << text;
    if (!out) throw std::ios_base::failure("write failed: " + path);
}

std::string render(const sbc::Cube& c, const std::string& format) {
    return format == "text" ? sbc::encode_cube_text(c) : sbc::encode_cube(c);
}

void print_report(const sbc::VerificationReport& r) {
    if (r.accepted) {
        std::cout << "accepted, range [" << r.start << "," << r.start + r.line_count - 1
                  << "], " << r.line_count << " lines\n";
    } else {
        std::cout << "rejected: " << r.first_defect << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sarvate-Beam cube construction, verification and search"};
    app.require_subcommand(1);
    int threads = 1;
    app.add_option("--threads", threads, "worker bound (outputs are thread-count independent)")
        ->check(CLI::PositiveNumber);

    // gen
    auto* gen = app.add_subcommand("gen", "construct a verified SBC(n)");
    int gen_n = 0;
    std::string gen_strategy = "auto", gen_format = "json", gen_out;
    gen->add_option("n", gen_n, "cube side")->required()->check(CLI::Range(2, 1 << 20));
    gen->add_option("--strategy", gen_strategy)
        ->check(CLI::IsMember({"auto", "library", "inflate", "special", "pbd"}));
    gen->add_option("--format", gen_format)->check(CLI::IsMember({"json", "text"}));
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // verify
    auto* verify = app.add_subcommand("verify", "verify a cube file");
    std::string verify_file;
    verify->add_option("file", verify_file)->required();

    // search
    auto* search = app.add_subcommand("search", "backtracking oracle");
    search->require_subcommand(1);
    long long s_start = 0;
    std::uint64_t s_seed = 0, s_budget = 50'000'000;
    std::string s_format = "json", s_out;
    search->add_option("--start", s_start)->check(CLI::NonNegativeNumber);
    search->add_option("--seed", s_seed);
    search->add_option("--budget", s_budget)->check(CLI::PositiveNumber);
    search->add_option("--format", s_format)->check(CLI::IsMember({"json", "text"}));
    search->add_option("--out", s_out);
    auto* s_sbc = search->add_subcommand("sbc", "full n x n x n mask");
    int s_n = 0;
    s_sbc->add_option("n", s_n)->required()->check(CLI::Range(1, 16));
    s_sbc->fallthrough();
    auto* s_mask = search->add_subcommand("mask", "mask from a cube file");
    std::string s_maskfile;
    s_mask->add_option("file", s_maskfile)->required();
    s_mask->fallthrough();
    auto* s_sbts = search->add_subcommand("sbts", "Sarvate-Beam triple system");
    int s_v = 0;
    s_sbts->add_option("v", s_v)->required()->check(CLI::Range(3, 64));
    s_sbts->fallthrough();

    // pbd
    auto* pbd = app.add_subcommand("pbd", "construct a verified PBD(v,{4,5,6})");
    int pbd_v = 0;
    std::string pbd_out;
    pbd->add_option("v", pbd_v)->required()->check(CLI::PositiveNumber);
    pbd->add_option("--out", pbd_out, "output path (default stdout)");

    // blocks
    auto* blocks = app.add_subcommand("blocks", "bundled explicit cubes");
    auto* blocks_list = blocks->add_subcommand("list", "list kinds");
    auto* blocks_show = blocks->add_subcommand("show", "print one cube");
    std::string bk_kind, bk_format = "text";
    blocks_show->add_option("kind", bk_kind)->required();
    blocks_show->add_option("--format", bk_format)->check(CLI::IsMember({"json", "text"}));
    blocks->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            sbc::GenStrategy st = sbc::GenStrategy::Auto;
            if (gen_strategy == "library") st = sbc::GenStrategy::Library;
            if (gen_strategy == "inflate") st = sbc::GenStrategy::Inflate;
            if (gen_strategy == "special") st = sbc::GenStrategy::Special;
            if (gen_strategy == "pbd") st = sbc::GenStrategy::Pbd;
            sbc::Cube c = sbc::generate_sbc(gen_n, st);
            sbc::VerificationReport r = sbc::verify_consecutive(c);
            if (!r.accepted) {
                std::cerr << "internal: generated cube failed verification\n";
                return kExitVerifyFail;
            }
            spill(gen_out, render(c, gen_format));
            std::cerr << "SBC(" << gen_n << ") verified, range [0," << 3LL * gen_n * gen_n - 1
                      << "]\n";
            return kExitOk;
        }
        if (*verify) {
            sbc::Cube c = sbc::decode_cube(slurp(verify_file));
            sbc::VerificationReport r = sbc::verify_consecutive(c);
            print_report(r);
            return r.accepted ? kExitOk : kExitVerifyFail;
        }
        if (*search) {
            if (*s_sbts) {
                sbc::SbtsSearchResult r = sbc::search_sbts(s_v, s_budget, s_seed);
                if (r.status == sbc::SearchStatus::Found) {
                    std::cout << "found after " << r.nodes << " nodes\n";
                    for (const auto& [key, w] : r.weights->w)
                        std::cout << "{" << key[0] + 1 << "," << key[1] + 1 << "," << key[2] + 1
                                  << "} x" << w << "\n";
                    return kExitOk;
                }
                if (r.status == sbc::SearchStatus::ExhaustedNone) {
                    std::cout << "exhausted: no SBTS(" << s_v << ") exists\n";
                    return kExitExhausted;
                }
                std::cout << "budget exceeded after " << r.nodes << " nodes\n";
                return kExitBudget;
            }
            sbc::SearchProblem p;
            if (*s_sbc) {
                p.mask = sbc::full_mask(s_n);
            } else {
                sbc::Cube m = sbc::decode_cube(slurp(s_maskfile));
                p.mask = m.mask;
            }
            p.start = s_start;
            p.seed = s_seed;
            p.budget = s_budget;
            sbc::CubeSearchResult r = sbc::search_cube(p);
            if (r.status == sbc::SearchStatus::Found) {
                std::cerr << "found after " << r.nodes << " nodes\n";
                spill(s_out, render(*r.cube, s_format));
                return kExitOk;
            }
            if (r.status == sbc::SearchStatus::ExhaustedNone) {
                std::cout << "exhausted: no witness exists (start " << s_start << ")\n";
                return kExitExhausted;
            }
            std::cout << "budget exceeded after " << r.nodes << " nodes\n";
            return kExitBudget;
        }
        if (*pbd) {
            sbc::BlockDesign d = sbc::pbd456(pbd_v);
            spill(pbd_out, sbc::encode_design(d));
            std::cerr << "PBD(" << pbd_v << ",{4,5,6}) verified, " << d.blocks.size()
                      << " blocks (" << d.provenance << ")\n";
            return kExitOk;
        }
        if (*blocks) {
            if (*blocks_list) {
                for (sbc::BlockKind k : sbc::all_block_kinds()) {
                    sbc::Cube c = sbc::block_cube(k);
                    std::cout << sbc::to_string(k) << "  n=" << c.n << "  lines=["
                              << 0 << "," << sbc::block_line_count(k) - 1 << "]\n";
                }
                return kExitOk;
            }
            sbc::Cube c = sbc::block_cube(sbc::block_kind_from_string(bk_kind));
            std::cout << render(c, bk_format);
            return kExitOk;
        }
    } catch (const sbc::unavailable_error& e) {
        std::cerr << "unavailable: " << e.what() << "\n";
        return kExitUnavailable;
    } catch (const sbc::parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const sbc::argument_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitVerifyFail;
    }
    return kExitUsage;
}
