// sigret: index signature images, run similarity queries and retrieval
// benchmarks over DWT / curvelet texture features.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sigret/sigret.hpp"

namespace fs = std::filesystem;

namespace {

struct TransformFlags {
    std::string transform = "dwt";
    int levels = 3;
    std::string wavelet = "db4";
    int scales = 5;
    int angles = 16;
    bool finest_directional = false;

    sigret::TransformSpec to_spec() const {
        if (transform == "dwt") return sigret::DwtParams{levels, wavelet};
        if (transform == "curvelet") {
            return sigret::CurveletParams{
                sigret::CurveletConfig{scales, angles, !finest_directional}};
        }
        throw sigret::Error("unknown transform '" + transform + "' (expected dwt or curvelet)");
    }
};

void add_transform_flags(CLI::App& app, TransformFlags& tf) {
    app.add_option("--transform", tf.transform, "Feature transform: dwt or curvelet")
        ->check(CLI::IsMember({"dwt", "curvelet"}));
    app.add_option("--levels", tf.levels, "DWT decomposition levels");
    app.add_option("--wavelet", tf.wavelet, "DWT wavelet family (haar, db4)");
    app.add_option("--scales", tf.scales, "Curvelet scale count");
    app.add_option("--angles", tf.angles, "Curvelet orientations at the second-coarsest scale");
    app.add_flag("--finest-directional", tf.finest_directional,
                 "Use directional wedges at the finest curvelet scale instead of a wavelet ring");
}

struct CorpusEntry {
    fs::path path;
    std::string id;
    std::string writer;
};

// Either a manifest CSV (path,writer,sample) or a directory whose immediate
// subdirectories are writer labels containing PGM files.
std::vector<CorpusEntry> scan_corpus(const fs::path& corpus) {
    std::vector<CorpusEntry> entries;
    if (fs::is_regular_file(corpus)) {
        std::ifstream in(corpus);
        if (!in) throw sigret::IoError("cannot open manifest: " + corpus.string());
        const fs::path base = corpus.parent_path();
        std::string line;
        std::getline(in, line); // header
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::stringstream ss(line);
            std::string path, writer, sample;
            if (!std::getline(ss, path, ',') || !std::getline(ss, writer, ',') ||
                !std::getline(ss, sample, ',')) {
                throw sigret::ParseError("malformed manifest line: " + line);
            }
            entries.push_back({base / path, writer + "/" + sample, writer});
        }
    } else if (fs::is_directory(corpus)) {
        for (const auto& e : fs::recursive_directory_iterator(corpus)) {
            if (!e.is_regular_file()) continue;
            const auto ext = e.path().extension().string();
            if (ext != ".pgm" && ext != ".ppm" && ext != ".pnm") continue;
            const fs::path rel = fs::relative(e.path(), corpus);
            const std::string writer =
                rel.has_parent_path() ? rel.parent_path().generic_string() : "unknown";
            entries.push_back({e.path(), rel.generic_string(), writer});
        }
    } else {
        throw sigret::FileNotFound("no such corpus: " + corpus.string());
    }
    std::sort(entries.begin(), entries.end(),
              [](const CorpusEntry& a, const CorpusEntry& b) { return a.id < b.id; });
    return entries;
}

int cmd_index(const fs::path& corpus, const fs::path& db_path, const TransformFlags& tf,
              int target_side) {
    const auto entries = scan_corpus(corpus);
    if (entries.empty()) {
        std::cerr << "error: no images found in " << corpus << "\n";
        return 1;
    }
    const sigret::TransformSpec spec = tf.to_spec();

    sigret::FeatureDB db;
    bool first = true;
    for (const auto& e : entries) {
        const sigret::GrayImage img = sigret::preprocess(sigret::load_image(e.path), target_side);
        sigret::FeatureVector fv = sigret::extract_features(img, spec);
        if (first) {
            db.layout = fv.layout;
            first = false;
        }
        db.records.push_back({e.id, e.writer, e.path.generic_string(), std::move(fv.values)});
    }
    sigret::save_db(db, db_path);
    std::cout << "indexed " << db.records.size() << " images (dim " << db.layout.dim() << ") -> "
              << db_path.generic_string() << "\n";
    return 0;
}

int cmd_query(const fs::path& db_path, const fs::path& image_path, std::size_t k,
              int target_side, const TransformFlags& tf, bool explicit_transform) {
    const sigret::FeatureDB db = sigret::load_db(db_path);
    const sigret::GrayImage img =
        sigret::preprocess(sigret::load_image(image_path), target_side);
    // default: extract with the transform recorded in the db header
    const sigret::TransformSpec spec =
        explicit_transform ? tf.to_spec() : db.layout.transform;
    const sigret::FeatureVector probe = sigret::extract_features(img, spec);
    const sigret::RankedList ranked = sigret::query(db, probe, k);

    std::cout << "rank\tid\twriter\tdistance\tsource\n";
    char buf[64];
    for (std::size_t i = 0; i < ranked.entries.size(); ++i) {
        const auto& e = ranked.entries[i];
        std::snprintf(buf, sizeof buf, "%.9g", e.distance);
        std::cout << (i + 1) << "\t" << e.id << "\t" << e.writer << "\t" << buf << "\t"
                  << e.source << "\n";
    }
    return 0;
}

void print_report(const sigret::EvalReport& r) {
    std::cout << "transform: " << r.transform << " (seed " << r.seed << ")\n";
    std::cout << "top-k\tprecision%\trecall%\n";
    for (std::size_t i = 0; i < r.cuts.size(); ++i) {
        std::cout << r.cuts[i] << "\t" << sigret::detail::pct1(r.mean_precision_pct[i]) << "\t\t"
                  << sigret::detail::pct1(r.mean_recall_pct[i]) << "\n";
    }
}

int cmd_eval(const fs::path& db_path, const fs::path& db2_path, const std::vector<std::size_t>& cuts,
             std::uint64_t seed, bool leave_out, const fs::path& csv_path) {
    sigret::EvalProtocol protocol;
    if (!cuts.empty()) protocol.cuts = cuts;
    protocol.seed = seed;
    protocol.query_in_db = !leave_out;

    const sigret::EvalReport a = sigret::run_benchmark(sigret::load_db(db_path), protocol);
    print_report(a);
    if (!db2_path.empty()) {
        const sigret::EvalReport b = sigret::run_benchmark(sigret::load_db(db2_path), protocol);
        std::cout << "\n";
        print_report(b);
        if (!csv_path.empty()) {
            sigret::emit_comparison(a, b, csv_path);
            std::cout << "\ncomparison written to " << csv_path.generic_string() << "\n";
        }
    }
    return 0;
}

int cmd_synth(const sigret::SynthSpec& spec, const fs::path& out_dir) {
    const fs::path manifest = sigret::write_corpus(spec, out_dir);
    std::cout << "wrote " << (spec.writers * spec.samples_per_writer) << " images under "
              << out_dir.generic_string() << " (manifest " << manifest.generic_string() << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"signature-image similarity retrieval over DWT / curvelet texture features"};
    app.require_subcommand(1);
    int target_side = 256;
    app.add_option("--side", target_side, "Canonical analysis raster side")->capture_default_str();

    auto* index = app.add_subcommand("index", "Extract features from a corpus into a .sigdb file");
    fs::path corpus, db_path;
    TransformFlags index_tf;
    index->add_option("--corpus", corpus, "Corpus directory or manifest CSV")->required();
    index->add_option("--db", db_path, "Output database path")->required();
    add_transform_flags(*index, index_tf);

    auto* queryc = app.add_subcommand("query", "Rank database records against a query image");
    fs::path qdb, qimage;
    std::size_t k = 10;
    TransformFlags query_tf;
    queryc->add_option("--db", qdb, "Database path")->required();
    queryc->add_option("--image", qimage, "Query image path")->required();
    queryc->add_option("--k", k, "Number of results")->capture_default_str();
    add_transform_flags(*queryc, query_tf);

    auto* evalc = app.add_subcommand("eval", "Run the precision/recall-at-k benchmark");
    fs::path edb, edb2, csv_path;
    std::vector<std::size_t> cuts;
    std::uint64_t seed = 42;
    bool leave_out = false;
    evalc->add_option("--db", edb, "Database path")->required();
    evalc->add_option("--db2", edb2, "Second database for side-by-side comparison");
    evalc->add_option("--cuts", cuts, "Top-k cuts (default 1 2 5 8 10 12)");
    evalc->add_option("--seed", seed, "Query-draw seed")->capture_default_str();
    evalc->add_flag("--leave-out", leave_out, "Exclude the query record from the scanned database");
    evalc->add_option("--csv", csv_path, "Comparison CSV output path (requires --db2)");

    auto* synthc = app.add_subcommand("synth", "Generate a deterministic synthetic corpus");
    sigret::SynthSpec spec;
    fs::path out_dir;
    synthc->add_option("--out", out_dir, "Output directory")->required();
    synthc->add_option("--writers", spec.writers, "Writer count")->capture_default_str();
    synthc->add_option("--samples", spec.samples_per_writer, "Samples per writer")
        ->capture_default_str();
    synthc->add_option("--seed", spec.seed, "Corpus seed")->capture_default_str();
    synthc->add_option("--synth-side", spec.side, "Image side in pixels")->capture_default_str();
    synthc->add_option("--point-jitter", spec.point_jitter, "Control-point jitter (px)")
        ->capture_default_str();
    synthc->add_option("--translate-jitter", spec.translate_jitter, "Translation jitter (px)")
        ->capture_default_str();
    synthc->add_option("--width-jitter", spec.width_jitter, "Relative stroke-width jitter")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(index)) return cmd_index(corpus, db_path, index_tf, target_side);
        if (app.got_subcommand(queryc)) {
            const bool explicit_transform = queryc->count("--transform") > 0;
            return cmd_query(qdb, qimage, k, target_side, query_tf, explicit_transform);
        }
        if (app.got_subcommand(evalc)) return cmd_eval(edb, edb2, cuts, seed, leave_out, csv_path);
        if (app.got_subcommand(synthc)) return cmd_synth(spec, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
