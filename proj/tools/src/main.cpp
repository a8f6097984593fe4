// blockbound: JSON-reporting command-line front end for the vocabulary,
// bound, block-counting, and attack-simulation modules.

#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "blockbound/attack.hpp"
#include "blockbound/blockspace.hpp"
#include "blockbound/bound.hpp"
#include "blockbound/errors.hpp"
#include "blockbound/vocab.hpp"

namespace {

constexpr const char* kToolVersion = "1.0.0";

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256: digest failure");
    }
    static const char* kHex = "0123456789abcdef";
    std::string out(2 * len, '0');
    for (unsigned int i = 0; i < len; ++i) {
        out[2 * i] = kHex[md[i] >> 4];
        out[2 * i + 1] = kHex[md[i] & 0xF];
    }
    return out;
}

std::string utc_timestamp() {
    const std::time_t now = std::time(nullptr);
    std::tm tm_utc{};
    gmtime_r(&now, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::runtime_error("read error on '" + path + "'");
    return buffer.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << bytes;
    out.flush();
    if (!out) throw std::runtime_error("write error on '" + path + "'");
}

struct Manifest {
    std::string subcommand;
    nlohmann::json parameters = nlohmann::json::object();
    nlohmann::json input_digests = nlohmann::json::object();
    std::vector<std::string> notes;

    nlohmann::json to_json() const {
        return nlohmann::json{
            {"subcommand", subcommand},
            {"parameters", parameters},
            {"tool_version", kToolVersion},
            {"input_digests", input_digests},
            {"notes", notes},
            {"timestamp", utc_timestamp()},
        };
    }
};

void emit_report(const Manifest& manifest, nlohmann::json body) {
    body["manifest"] = manifest.to_json();
    std::cout << body.dump(2) << '\n';
}

struct LoadedWords {
    blockbound::Vocabulary vocabulary{std::set<std::string>{}};
    std::uint64_t skipped_lines = 0;
};

// Lenient load: malformed lines are skipped and counted rather than fatal.
LoadedWords load_words(const std::string& path, Manifest& manifest) {
    const std::string bytes = read_file(path);
    manifest.input_digests[path] = sha256_hex(bytes);
    const blockbound::LoadResult loaded = blockbound::load_wordlist_text(bytes, false);
    if (loaded.skipped_lines > 0) {
        manifest.notes.push_back("skipped " + std::to_string(loaded.skipped_lines) +
                                 " malformed line(s) in '" + path + "'");
    }
    return {loaded.vocabulary, loaded.skipped_lines};
}

struct VocabStatsArgs {
    std::string words;
    std::uint64_t block_len = 16;
    double mu_target = 2.0;
};

int run_vocab_stats(const VocabStatsArgs& args) {
    Manifest manifest;
    manifest.subcommand = "vocab-stats";
    manifest.parameters = {
        {"words", args.words},
        {"block_len", args.block_len},
        {"mu", args.mu_target},
    };
    const LoadedWords loaded = load_words(args.words, manifest);
    const blockbound::VocabStats stats =
        blockbound::compute_stats(loaded.vocabulary, args.block_len);
    const blockbound::LengthProfile profile =
        blockbound::length_profile(stats, args.mu_target);
    const blockbound::AffixProfile affixes = blockbound::affix_profile(stats);

    emit_report(manifest, nlohmann::json{
                              {"vocabulary",
                               {{"word_count", loaded.vocabulary.size()},
                                {"skipped_lines", loaded.skipped_lines}}},
                              {"stats", blockbound::to_json(stats)},
                              {"length_profile", blockbound::to_json(profile)},
                              {"affix_profile", blockbound::to_json(affixes)},
                          });
    return 0;
}

struct BoundArgs {
    std::string mode = "paper";
    std::uint64_t block_len = 16;
    std::optional<std::string> words;
    std::optional<double> mu;
    std::optional<std::uint64_t> N;
    std::optional<double> x;
    std::optional<double> lambda;
};

int run_bound(const BoundArgs& args) {
    Manifest manifest;
    manifest.subcommand = "bound";

    blockbound::BoundParams params;
    params.mode = blockbound::bound_mode_from_string(args.mode);
    params.B = args.block_len;

    if (args.lambda && params.mode != blockbound::BoundMode::affix_refined) {
        throw std::invalid_argument("--lambda is only meaningful with --mode affix");
    }

    if (args.words) {
        const LoadedWords loaded = load_words(*args.words, manifest);
        const blockbound::VocabStats stats =
            blockbound::compute_stats(loaded.vocabulary, params.B);
        params.N = std::max<std::uint64_t>(std::uint64_t{1}, loaded.vocabulary.size());
        params.mu = blockbound::measured_mu_ceiling(stats);
        params.X = blockbound::x_constant(params.B, params.N);
        params.x_source = "measured";
        if (args.N) {
            manifest.notes.push_back("N overridden to " + std::to_string(*args.N) +
                                     " (measured " + std::to_string(params.N) + ")");
            params.N = *args.N;
            params.X = blockbound::x_constant(params.B, params.N);
        }
        if (args.mu) {
            std::ostringstream note;
            note << "mu overridden to " << *args.mu << " (measured " << params.mu << ")";
            manifest.notes.push_back(note.str());
            params.mu = *args.mu;
        }
        if (args.x) {
            std::ostringstream note;
            note << "X overridden to " << *args.x << " (derived " << params.X << ")";
            manifest.notes.push_back(note.str());
            params.X = *args.x;
            params.x_source = "literal";
        }
        if (params.mode == blockbound::BoundMode::affix_refined) {
            params.lambda = args.lambda.value_or(26.0);
        }
    } else {
        if (args.N) params.N = *args.N;
        if (args.mu) params.mu = *args.mu;
        if (args.x) {
            params.X = *args.x;
        } else if (args.N) {
            params.X = blockbound::x_constant(params.B, params.N);
            params.x_source = "derived";
        }
        if (params.mode == blockbound::BoundMode::affix_refined) {
            params.lambda = args.lambda.value_or(26.0);
        }
    }

    manifest.parameters = {
        {"mode", blockbound::to_string(params.mode)},
        {"block_len", params.B},
        {"words", args.words ? nlohmann::json(*args.words) : nlohmann::json(nullptr)},
        {"mu", params.mu},
        {"N", params.N},
        {"X", params.X},
        {"x_source", params.x_source},
        {"lambda", params.lambda ? nlohmann::json(*params.lambda) : nlohmann::json(nullptr)},
    };

    const blockbound::BoundReport report = blockbound::bound_total(params);
    emit_report(manifest, nlohmann::json{{"bound", blockbound::to_json(report)}});
    return 0;
}

struct CountArgs {
    std::string words;
    std::uint64_t block_len = 16;
    bool brute_force = false;
    std::optional<std::string> dump;
};

int run_count(const CountArgs& args) {
    Manifest manifest;
    manifest.subcommand = "count";
    const bool brute = args.brute_force || args.dump.has_value();
    manifest.parameters = {
        {"words", args.words},
        {"block_len", args.block_len},
        {"brute_force", brute},
        {"dump", args.dump ? nlohmann::json(*args.dump) : nlohmann::json(nullptr)},
    };
    const LoadedWords loaded = load_words(args.words, manifest);
    const blockbound::BlockGrammar grammar{args.block_len};
    const blockbound::VocabStats stats =
        blockbound::compute_stats(loaded.vocabulary, args.block_len);
    const blockbound::ClassCounts dp = blockbound::dp_count(stats, grammar);

    nlohmann::json body{{"dp", blockbound::to_json(dp)}};
    if (brute) {
        std::vector<std::string> dump_lines;
        const blockbound::EnumerationResult enumerated = blockbound::brute_force_enumerate(
            loaded.vocabulary, grammar, 10'000'000,
            args.dump ? &dump_lines : nullptr);
        const bool matches = enumerated.counts.m_count == dp.m_count &&
                             enumerated.counts.c_count == dp.c_count &&
                             enumerated.counts.p_count == dp.p_count &&
                             enumerated.counts.total == dp.total;
        body["brute_force"] = {
            {"counts", blockbound::to_json(enumerated.counts)},
            {"path_count", blockbound::to_decimal_string(enumerated.path_count)},
            {"injective", enumerated.injective},
            {"matches_dp", matches},
        };
        if (args.dump) {
            std::string dump_bytes;
            for (const auto& line : dump_lines) {
                dump_bytes += line;
                dump_bytes += '\n';
            }
            write_file(*args.dump, dump_bytes);
            body["dump_path"] = *args.dump;
        }
    }
    emit_report(manifest, std::move(body));
    return 0;
}

struct CheckArgs {
    std::string words;
    std::uint64_t block_len = 16;
};

int run_check(const CheckArgs& args) {
    Manifest manifest;
    manifest.subcommand = "check";
    manifest.parameters = {
        {"words", args.words},
        {"block_len", args.block_len},
    };
    const LoadedWords loaded = load_words(args.words, manifest);
    const blockbound::BlockGrammar grammar{args.block_len};
    const blockbound::DominationReport report =
        blockbound::check_domination(loaded.vocabulary, grammar, std::nullopt);
    emit_report(manifest, nlohmann::json{{"domination", blockbound::to_json(report)}});
    return 0;
}

struct AttackArgs {
    unsigned bits = 16;
    std::optional<std::uint64_t> dict_size;
    std::optional<std::uint64_t> samples;
    std::uint64_t trials = 1;
    std::uint64_t seed = 0;
    std::optional<std::string> codebook;
};

int run_attack(const AttackArgs& args) {
    Manifest manifest;
    manifest.subcommand = "attack";

    blockbound::AttackConfig config;
    config.m = args.bits;
    config.dict_size = args.dict_size;
    config.samples = args.samples;
    config.trials = args.trials;
    config.seed = args.seed;
    config.validate();

    manifest.parameters = {
        {"bits", config.m},
        {"dict_size", config.resolved_dict_size()},
        {"samples", config.resolved_samples()},
        {"trials", config.trials},
        {"seed", config.seed},
        {"codebook", args.codebook ? nlohmann::json(*args.codebook) : nlohmann::json(nullptr)},
    };
    if (!args.dict_size) manifest.notes.push_back("dict_size defaulted to min(2^m, 2^(floor(m/2)+2))");
    if (!args.samples) manifest.notes.push_back("samples defaulted to 2^floor(m/2)");

    blockbound::Codebook first_book;
    const blockbound::AttackResult result =
        blockbound::run_trials(config, args.codebook ? &first_book : nullptr);

    nlohmann::json body{{"attack", blockbound::to_json(result)}};
    if (args.codebook) {
        write_file(*args.codebook, blockbound::codebook_to_text(first_book));
        body["codebook_path"] = *args.codebook;
    }
    emit_report(manifest, std::move(body));
    return 0;
}

nlohmann::json error_json(const std::string& type, const std::string& message) {
    return nlohmann::json{{"error", {{"type", type}, {"message", message}}}};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"English-plaintext block-space bounds and a toy codebook attack"};
    app.require_subcommand(1);

    VocabStatsArgs vs_args;
    auto* vs = app.add_subcommand("vocab-stats",
                                  "Word/affix statistics and length profile of a word list");
    vs->add_option("--words", vs_args.words, "Path to a word list (one word per line)")
        ->required();
    vs->add_option("--block-len", vs_args.block_len, "Block length in bytes")
        ->capture_default_str();
    vs->add_option("--mu", vs_args.mu_target, "Target length-profile ratio")
        ->capture_default_str();

    BoundArgs bound_args;
    auto* bound = app.add_subcommand("bound", "Upper bound on the number of plaintext blocks");
    bound->add_option("--mode", bound_args.mode, "paper | exact | affix")
        ->capture_default_str();
    bound->add_option("--block-len", bound_args.block_len, "Block length in bytes")
        ->capture_default_str();
    bound->add_option("--words", bound_args.words,
                      "Measure mu/X/N from this word list instead of using defaults");
    bound->add_option("--mu", bound_args.mu, "Length-profile constant");
    bound->add_option("--N", bound_args.N, "Vocabulary size");
    bound->add_option("--x", bound_args.x, "Edge-segment constant X");
    bound->add_option("--lambda", bound_args.lambda, "Affix constant (affix mode only)");

    CountArgs count_args;
    auto* count = app.add_subcommand("count", "Exact block counts for a word list");
    count->add_option("--words", count_args.words, "Path to a word list")->required();
    count->add_option("--block-len", count_args.block_len, "Block length in bytes")
        ->capture_default_str();
    count->add_flag("--brute-force", count_args.brute_force,
                    "Cross-check the count by exhaustive enumeration");
    count->add_option("--dump", count_args.dump,
                      "Write every enumerated block to this file (implies --brute-force)");

    CheckArgs check_args;
    auto* check = app.add_subcommand("check",
                                     "Verify that the bound dominates the exact count");
    check->add_option("--words", check_args.words, "Path to a word list")->required();
    check->add_option("--block-len", check_args.block_len, "Block length in bytes")
        ->capture_default_str();

    AttackArgs attack_args;
    auto* attack = app.add_subcommand("attack", "Codebook attack on a seeded toy cipher");
    attack->add_option("--bits", attack_args.bits, "Block size in bits")->required();
    attack->add_option("--dict-size", attack_args.dict_size, "Captured codebook entries");
    attack->add_option("--samples", attack_args.samples, "Intercepted blocks per trial");
    attack->add_option("--trials", attack_args.trials, "Number of independent trials")
        ->required();
    attack->add_option("--seed", attack_args.seed, "Base seed")->required();
    attack->add_option("--codebook", attack_args.codebook,
                       "Write trial 0's codebook to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << error_json("usage", e.what()).dump(2) << '\n';
        return 2;
    }

    try {
        if (vs->parsed()) return run_vocab_stats(vs_args);
        if (bound->parsed()) return run_bound(bound_args);
        if (count->parsed()) return run_count(count_args);
        if (check->parsed()) return run_check(check_args);
        if (attack->parsed()) return run_attack(attack_args);
        std::cerr << error_json("usage", "no subcommand given").dump(2) << '\n';
        return 2;
    } catch (const blockbound::parse_error& e) {
        std::cerr << error_json("parse_error", e.what()).dump(2) << '\n';
        return 1;
    } catch (const blockbound::resource_error& e) {
        std::cerr << error_json("resource_error", e.what()).dump(2) << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << error_json("invalid_argument", e.what()).dump(2) << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << error_json("domain_error", e.what()).dump(2) << '\n';
        return 1;
    } catch (const std::range_error& e) {
        std::cerr << error_json("range_error", e.what()).dump(2) << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << error_json("internal", e.what()).dump(2) << '\n';
        return 1;
    }
}
