// Command-line front end. One subcommand per run; exit code 0 on success,
// 1 for usage or parameter problems, 2 for I/O failures.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "suace/bench.hpp"
#include "suace/clahe.hpp"
#include "suace/codec.hpp"
#include "suace/enhance.hpp"
#include "suace/entropy.hpp"
#include "suace/errors.hpp"
#include "suace/hmfil.hpp"
#include "suace/parallel.hpp"
#include "suace/phantom.hpp"
#include "suace/sweep.hpp"

using namespace suace;

namespace {

// Every enhanceable algorithm's knobs in one bag; each subcommand exposes
// the subset it understands and the dispatcher picks by name.
struct AlgoConfig {
    std::string algo = "suace";
    SuaceParams suace;
    ClaheParams clahe;
    HmfilParams hmfil;
};

void add_algo_options(CLI::App* cmd, AlgoConfig& cfg) {
    cmd->add_option("--algo", cfg.algo, "Algorithm to apply")
        ->check(CLI::IsMember({"suace", "clahe", "hmfil"}))
        ->capture_default_str();
    cmd->add_option("--sigma", cfg.suace.sigma, "suace: illumination blur sigma")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--d", cfg.suace.d, "suace: stretched input window width")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--k", cfg.suace.k, "suace: output range")
        ->check(CLI::Range(1, 255))
        ->capture_default_str();
    cmd->add_option("--split", cfg.suace.split,
                    "suace: fraction of the window below the local level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--tiles-x", cfg.clahe.tiles_x, "clahe: tile columns")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--tiles-y", cfg.clahe.tiles_y, "clahe: tile rows")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--clip", cfg.clahe.clip_limit, "clahe: normalized clip limit")
        ->check(CLI::Range(1.0, 1e30))
        ->capture_default_str();
    cmd->add_option("--alpha", cfg.hmfil.alpha, "hmfil: histogram blend weight")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--gamma-low", cfg.hmfil.gamma_low, "hmfil: low-frequency gain")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--gamma-high", cfg.hmfil.gamma_high, "hmfil: high-frequency gain")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cutoff", cfg.hmfil.cutoff,
                    "hmfil: high-pass cutoff as a fraction of the diagonal")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

GrayImage apply_algo(const GrayImage& img, const AlgoConfig& cfg) {
    if (cfg.algo == "clahe")
        return clahe_enhance(img, cfg.clahe);
    if (cfg.algo == "hmfil") {
        if (cfg.hmfil.gamma_low >= cfg.hmfil.gamma_high)
            throw ParamError("--gamma-low must be below --gamma-high");
        return hmfil_enhance(img, cfg.hmfil);
    }
    return enhance(img, cfg.suace);
}

int run_enhance(const std::string& in, const std::string& out, const AlgoConfig& cfg) {
    save_image(out, apply_algo(load_image(in), cfg));
    return 0;
}

int run_sweep(const std::string& in, const std::string& out,
              const std::vector<double>& sigmas, const std::vector<double>& ds,
              const SuaceParams& base) {
    GrayImage img = load_image(in);
    SweepResult sw = sweep_montage(img, sigmas, ds, base);
    save_image(out, sw.montage);
    nlohmann::json j;
    j["montage"] = out;
    j["cell_width"] = sw.cell_width;
    j["cell_height"] = sw.cell_height;
    j["rows"] = static_cast<int>(sigmas.size());
    j["cols"] = static_cast<int>(ds.size());
    j["cells"] = nlohmann::json::array();
    for (const SweepCell& c : sw.cells)
        j["cells"].push_back(
            {{"row", c.row}, {"col", c.col}, {"sigma", c.sigma}, {"d", c.d}});
    const std::string sidecar = out + ".json";
    const std::string text = j.dump(2) + "\n";
    write_file_bytes(sidecar, std::vector<std::uint8_t>(text.begin(), text.end()));
    return 0;
}

int run_bench(const std::vector<std::string>& algos, const std::string& image_path,
              std::uint64_t seed, int frames, int warmup, bool parallel,
              const std::string& out) {
    if (frames < 10)
        throw ParamError("--frames must be at least 10");
    if (warmup < 0)
        throw ParamError("--warmup must be >= 0");
    GrayImage frame;
    if (image_path.empty()) {
        PhantomSpec spec;
        spec.seed = seed;
        frame = generate_phantom(spec).image;
    } else {
        frame = load_image(image_path);
    }
    set_thread_override(parallel ? 0 : 1);
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& algo : algos)
        arr.push_back(nlohmann::json::parse(
            bench_report_to_json(suace::run_bench(algo, frame, frames, warmup))));
    const std::string text = arr.dump(2) + "\n";
    if (out.empty())
        std::fputs(text.c_str(), stdout);
    else
        write_file_bytes(out, std::vector<std::uint8_t>(text.begin(), text.end()));
    return 0;
}

int run_entropy(const std::vector<std::string>& paths) {
    nlohmann::json arr = nlohmann::json::array();
    for (const std::string& path : paths) {
        EntropyReport rep = entropy(load_image(path));
        nlohmann::json j;
        j["path"] = path;
        j["entropy_bits"] = std::round(rep.entropy_bits * 100.0) / 100.0;
        j["pixel_count"] = rep.pixel_count;
        j["histogram"] = rep.histogram;
        arr.push_back(j);
    }
    std::fputs((arr.dump(2) + "\n").c_str(), stdout);
    return 0;
}

int run_phantom(const PhantomSpec& spec, const std::string& out,
                const std::string& mask_out, bool print_sigma) {
    validate(spec);
    if (print_sigma)
        std::printf("%g\n", suggested_sigma(spec));
    if (!out.empty() || !mask_out.empty()) {
        Phantom ph = generate_phantom(spec);
        if (!out.empty())
            save_image(out, ph.image);
        if (!mask_out.empty())
            save_image(mask_out, ph.ridge_mask);
    } else if (!print_sigma) {
        throw ParamError("nothing to do: pass --out, --mask, or --print-suggested-sigma");
    }
    return 0;
}

int run_stream(const std::string& in, const std::string& out, int width, int height,
               const AlgoConfig& cfg) {
    std::FILE* src = in == "-" ? stdin : std::fopen(in.c_str(), "rb");
    if (!src)
        throw IoError("cannot open stream input '" + in + "'");
    std::FILE* dst = out == "-" ? stdout : std::fopen(out.c_str(), "wb");
    if (!dst) {
        if (src != stdin)
            std::fclose(src);
        throw IoError("cannot open stream output '" + out + "'");
    }

    const std::size_t frame_bytes = static_cast<std::size_t>(width) * height;
    GrayImage frame(width, height);
    std::vector<double> frame_times;
    int status = 0;
    for (;;) {
        const std::size_t got = std::fread(frame.samples.data(), 1, frame_bytes, src);
        if (got == 0)
            break;
        if (got < frame_bytes) {
            std::fprintf(stderr,
                         "warning: discarding partial trailing frame (%zu of %zu bytes)\n",
                         got, frame_bytes);
            break;
        }
        const auto t0 = std::chrono::steady_clock::now();
        GrayImage enhanced = apply_algo(frame, cfg);
        frame_times.push_back(
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
        if (std::fwrite(enhanced.samples.data(), 1, frame_bytes, dst) != frame_bytes) {
            std::fprintf(stderr, "error: short write on stream output\n");
            status = 2;
            break;
        }
    }
    if (src != stdin)
        std::fclose(src);
    if (dst != stdout)
        std::fclose(dst);
    if (status == 0) {
        // Median compute time, the same statistic the bench subcommand
        // reports, so the two paths can be cross-checked.
        const double med =
            frame_times.empty() ? 0.0 : detail::median_of(frame_times);
        std::fprintf(stderr, "processed %zu frames, %.1f fps\n", frame_times.size(),
                     med > 0.0 ? 1.0 / med : 0.0);
    }
    return status;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Image enhancement toolkit: adaptive contrast stretch (SUACE) "
                 "with CLAHE and homomorphic-filter baselines"};
    app.require_subcommand(1);

    // enhance
    auto* c_enh = app.add_subcommand("enhance", "Enhance one image file");
    std::string enh_in, enh_out;
    AlgoConfig enh_cfg;
    c_enh->add_option("input", enh_in, "Input image (PGM or PNG)")->required();
    c_enh->add_option("output", enh_out, "Output image path")->required();
    add_algo_options(c_enh, enh_cfg);

    // sweep
    auto* c_swp = app.add_subcommand(
        "sweep", "Grid of SUACE outputs over sigma and d, as one montage image");
    std::string swp_in, swp_out;
    std::vector<double> swp_sigmas, swp_ds;
    SuaceParams swp_base;
    c_swp->add_option("input", swp_in, "Input image")->required();
    c_swp->add_option("output", swp_out, "Montage image path (sidecar JSON added)")
        ->required();
    c_swp->add_option("--sigmas", swp_sigmas, "Sigma per grid row, comma separated")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    c_swp->add_option("--ds", swp_ds, "d per grid column, comma separated")
        ->required()
        ->delimiter(',')
        ->check(CLI::PositiveNumber);
    c_swp->add_option("--k", swp_base.k, "Output range")
        ->check(CLI::Range(1, 255))
        ->capture_default_str();
    c_swp->add_option("--split", swp_base.split, "Window fraction below the local level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();

    // bench
    auto* c_ben = app.add_subcommand("bench", "Frame-throughput benchmark");
    std::vector<std::string> ben_algos = {"idle", "suace", "clahe", "hmfil"};
    std::string ben_image, ben_out;
    std::uint64_t ben_seed = 1;
    int ben_frames = 100, ben_warmup = 5;
    bool ben_parallel = false;
    c_ben->add_option("--algos", ben_algos, "Algorithms to time, comma separated")
        ->delimiter(',')
        ->check(CLI::IsMember({"idle", "suace", "clahe", "hmfil"}))
        ->capture_default_str();
    c_ben->add_option("--image", ben_image,
                      "Frame to process (default: built-in 640x480 synthetic)");
    c_ben->add_option("--seed", ben_seed, "Seed for the built-in frame")
        ->capture_default_str();
    c_ben->add_option("--frames", ben_frames, "Measured frames (>= 10)")
        ->capture_default_str();
    c_ben->add_option("--warmup", ben_warmup, "Unmeasured warmup frames")
        ->capture_default_str();
    c_ben->add_flag("--parallel", ben_parallel,
                    "Allow worker threads (default: force single-threaded)");
    c_ben->add_option("--out", ben_out, "Write the JSON report here instead of stdout");

    // entropy
    auto* c_ent = app.add_subcommand("entropy", "Histogram entropy of images, as JSON");
    std::vector<std::string> ent_paths;
    c_ent->add_option("inputs", ent_paths, "Image files")->required();

    // phantom
    auto* c_pha = app.add_subcommand("phantom", "Generate a synthetic test image");
    PhantomSpec pha_spec;
    std::string pha_spec_path, pha_out, pha_mask;
    bool pha_print_sigma = false;
    c_pha->add_option("--spec", pha_spec_path, "JSON spec file (flags override it)");
    auto* o_w = c_pha->add_option("--width", pha_spec.width)->capture_default_str();
    auto* o_h = c_pha->add_option("--height", pha_spec.height)->capture_default_str();
    auto* o_rc =
        c_pha->add_option("--ridge-count", pha_spec.ridge_count)->capture_default_str();
    auto* o_rw =
        c_pha->add_option("--ridge-width", pha_spec.ridge_width)->capture_default_str();
    auto* o_rd =
        c_pha->add_option("--ridge-depth", pha_spec.ridge_depth)->capture_default_str();
    auto* o_gr = c_pha->add_option("--gradient", pha_spec.illum_gradient,
                                   "Corner-to-corner shading span")
                     ->capture_default_str();
    auto* o_bl =
        c_pha->add_option("--blobs", pha_spec.illum_blobs)->capture_default_str();
    auto* o_no =
        c_pha->add_option("--noise", pha_spec.noise_sigma)->capture_default_str();
    auto* o_se = c_pha->add_option("--seed", pha_spec.seed)->capture_default_str();
    c_pha->add_option("--out", pha_out, "Image output path");
    c_pha->add_option("--mask", pha_mask, "Ridge mask output path");
    c_pha->add_flag("--print-suggested-sigma", pha_print_sigma,
                    "Print the blur sigma suited to this ridge width");

    // stream
    auto* c_str = app.add_subcommand(
        "stream", "Enhance headerless raw 8-bit frames until end of input");
    std::string str_in, str_out;
    int str_w = 0, str_h = 0;
    AlgoConfig str_cfg;
    c_str->add_option("input", str_in, "Raw frame source ('-' for stdin)")->required();
    c_str->add_option("output", str_out, "Raw frame sink ('-' for stdout)")->required();
    c_str->add_option("--width", str_w, "Frame width")
        ->required()
        ->check(CLI::PositiveNumber);
    c_str->add_option("--height", str_h, "Frame height")
        ->required()
        ->check(CLI::PositiveNumber);
    add_algo_options(c_str, str_cfg);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*c_enh)
            return run_enhance(enh_in, enh_out, enh_cfg);
        if (*c_swp)
            return run_sweep(swp_in, swp_out, swp_sigmas, swp_ds, swp_base);
        if (*c_ben)
            return run_bench(ben_algos, ben_image, ben_seed, ben_frames, ben_warmup,
                             ben_parallel, ben_out);
        if (*c_ent)
            return run_entropy(ent_paths);
        if (*c_pha) {
            if (!pha_spec_path.empty()) {
                const auto bytes = read_file_bytes(pha_spec_path);
                PhantomSpec from_file =
                    phantom_spec_from_json(std::string(bytes.begin(), bytes.end()));
                // Explicit flags beat the file.
                if (!*o_w) pha_spec.width = from_file.width;
                if (!*o_h) pha_spec.height = from_file.height;
                if (!*o_rc) pha_spec.ridge_count = from_file.ridge_count;
                if (!*o_rw) pha_spec.ridge_width = from_file.ridge_width;
                if (!*o_rd) pha_spec.ridge_depth = from_file.ridge_depth;
                if (!*o_gr) pha_spec.illum_gradient = from_file.illum_gradient;
                if (!*o_bl) pha_spec.illum_blobs = from_file.illum_blobs;
                if (!*o_no) pha_spec.noise_sigma = from_file.noise_sigma;
                if (!*o_se) pha_spec.seed = from_file.seed;
            }
            return run_phantom(pha_spec, pha_out, pha_mask, pha_print_sigma);
        }
        if (*c_str)
            return run_stream(str_in, str_out, str_w, str_h, str_cfg);
    } catch (const ParamError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
