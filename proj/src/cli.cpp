#include "ijv/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ijv/eval.hpp"
#include "ijv/phantom.hpp"
#include "ijv/tracker.hpp"

namespace fs = std::filesystem;

namespace ijv::cli {

namespace {

std::string indexed_name(const char* stem, int i, const char* ext) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s_%04d.%s", stem, i, ext);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(path.string() + ": cannot open for writing");
    out << text;
    if (!out) throw IoError(path.string() + ": write failed");
}

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Frame> load_frame_dir(const fs::path& dir) {
    std::vector<Frame> frames;
    for (int i = 0;; ++i) {
        const fs::path p = dir / indexed_name("frame", i, "pgm");
        if (!fs::exists(p)) break;
        frames.push_back(load_frame(p.string()));
    }
    if (frames.empty())
        throw IoError(dir.string() + ": no frame_0000.pgm found");
    return frames;
}

struct SeedArg {
    int x = 0, y = 0;
};

struct PairArg {
    double a = 0, b = 0;
};

bool parse_pair(const std::string& s, char sep, double* a, double* b) {
    const std::size_t k = s.find(sep);
    if (k == std::string::npos) return false;
    try {
        *a = std::stod(s.substr(0, k));
        *b = std::stod(s.substr(k + 1));
    } catch (...) {
        return false;
    }
    return true;
}

Frame overlay_frame(Frame frame, const Contour& contour) {
    const auto& pts = contour.points;
    const std::size_t n = pts.size();
    if (n < 2) return frame;
    for (std::size_t i = 0; i < n; ++i) {
        const Point& p = pts[i];
        const Point& q = pts[(i + 1) % n];
        const int steps =
            std::max(2, static_cast<int>(std::ceil(
                            std::hypot(q.x - p.x, q.y - p.y) * 2.0)));
        for (int s = 0; s <= steps; ++s) {
            const double t = static_cast<double>(s) / steps;
            const int x = static_cast<int>(std::lround(p.x + t * (q.x - p.x)));
            const int y = static_cast<int>(std::lround(p.y + t * (q.y - p.y)));
            if (frame.in_bounds(x, y)) frame.at(x, y) = 255;
        }
    }
    return frame;
}

std::string trace_csv(const SnakeDiagnostics& d) {
    std::string out = "t,energy,mean_displacement\n";
    char buf[96];
    for (std::size_t t = 0; t < d.energy_trace.size(); ++t) {
        const double disp =
            t == 0 ? 0.0 : d.displacement_trace[t - 1];
        std::snprintf(buf, sizeof(buf), "%zu,%.6f,%.6f\n", t,
                      d.energy_trace[t], disp);
        out += buf;
    }
    return out;
}

FrameStatus status_from_string(const std::string& s) {
    if (s == "ok") return FrameStatus::Ok;
    if (s == "collapsed") return FrameStatus::Collapsed;
    if (s == "leaked") return FrameStatus::Leaked;
    if (s == "failed") return FrameStatus::Failed;
    throw IoError("record CSV: unknown status '" + s + "'");
}

TrackingRecord load_record(const fs::path& dir) {
    TrackingRecord record;
    std::istringstream in(read_text(dir / "record.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        FrameResult r;
        std::getline(ls, field, ',');
        r.frame_index = std::stoi(field);
        std::getline(ls, field, ',');
        r.seed.x = std::stoi(field);
        std::getline(ls, field, ',');
        r.seed.y = std::stoi(field);
        std::getline(ls, field, ',');
        r.csa = std::stod(field);
        std::getline(ls, field, ',');
        r.iterations = std::stoi(field);
        std::getline(ls, field, ',');
        r.status = status_from_string(field);
        const fs::path cpath =
            dir / "contours" / indexed_name("contour", r.frame_index, "csv");
        if (fs::exists(cpath))
            r.contour = contour_from_csv(read_text(cpath));
        record.results.push_back(r);
    }
    return record;
}

// --- subcommand configs ----------------------------------------------------

struct PhantomCli {
    std::string preset = "distended";
    std::string size = "256x256";
    std::string center;
    std::string axes;
    std::string out_dir;
    PhantomSpec spec;
};

struct SegmentCli {
    std::string input_dir;
    std::string out_dir;
    std::string seed;
    bool overlays = false;
    bool trace = false;
    PipelineParams params;
};

struct EvalCli {
    std::string pred_dir;
    std::string truth_dir;
    std::string out_dir;
};

int run_phantom(PhantomCli& cfg, std::ostream& err) {
    PhantomSpec spec = cfg.spec;
    if (cfg.preset == "distended") {
        spec.preset = PhantomPreset::Distended;
    } else if (cfg.preset == "collapsing") {
        spec.preset = PhantomPreset::Collapsing;
    } else {
        err << "unknown preset '" << cfg.preset << "'\n";
        return 1;
    }
    double a = 0, b = 0;
    if (!parse_pair(cfg.size, 'x', &a, &b)) {
        err << "malformed --size, expected WxH\n";
        return 1;
    }
    spec.width = static_cast<int>(a);
    spec.height = static_cast<int>(b);
    if (cfg.center.empty()) {
        spec.center_x = spec.width / 2.0;
        spec.center_y = spec.height / 2.0;
    } else if (!parse_pair(cfg.center, ',', &spec.center_x, &spec.center_y)) {
        err << "malformed --center, expected X,Y\n";
        return 1;
    }
    if (!cfg.axes.empty()) {
        if (!parse_pair(cfg.axes, ',', &spec.base_a, &spec.base_b)) {
            err << "malformed --axes, expected A,B\n";
            return 1;
        }
    }

    const fs::path out(cfg.out_dir);
    fs::create_directories(out / "frames");
    fs::create_directories(out / "truth");

    std::string csa_csv = "frame,csa_px2\n";
    char buf[64];
    for (int t = 0; t < spec.n_frames; ++t) {
        save_frame(render_frame(spec, t),
                   (out / "frames" / indexed_name("frame", t, "pgm")).string());
        save_mask(truth_mask(spec, t),
                  (out / "truth" / indexed_name("mask", t, "pgm")).string());
        std::snprintf(buf, sizeof(buf), "%d,%.6f\n", t, true_csa(spec, t));
        csa_csv += buf;
    }
    write_text(out / "truth" / "csa.csv", csa_csv);
    return 0;
}

int run_segment(SegmentCli& cfg, std::ostream& err) {
    double sx = 0, sy = 0;
    if (!parse_pair(cfg.seed, ',', &sx, &sy)) {
        err << "malformed --seed, expected X,Y\n";
        return 1;
    }
    const Seed seed{static_cast<int>(sx), static_cast<int>(sy)};

    const std::vector<Frame> frames = load_frame_dir(cfg.input_dir);
    const TrackingRecord record = track_video(frames, seed, cfg.params);

    const fs::path out(cfg.out_dir);
    fs::create_directories(out / "contours");
    if (cfg.overlays) fs::create_directories(out / "overlays");
    if (cfg.trace) fs::create_directories(out / "trace");

    write_text(out / "record.csv", record.to_csv());
    for (const FrameResult& r : record.results) {
        write_text(out / "contours" /
                       indexed_name("contour", r.frame_index, "csv"),
                   contour_to_csv(r.contour));
        if (cfg.overlays)
            save_frame(overlay_frame(frames[r.frame_index], r.contour),
                       (out / "overlays" /
                        indexed_name("overlay", r.frame_index, "pgm"))
                           .string());
        if (cfg.trace)
            write_text(
                out / "trace" / indexed_name("trace", r.frame_index, "csv"),
                trace_csv(r.diagnostics));
    }
    return 0;
}

int run_eval(EvalCli& cfg, std::ostream& out) {
    const TrackingRecord record = load_record(cfg.pred_dir);

    const fs::path truth(cfg.truth_dir);
    std::vector<Mask> masks;
    for (int i = 0; i < static_cast<int>(record.results.size()); ++i)
        masks.push_back(
            load_mask((truth / indexed_name("mask", i, "pgm")).string()));

    std::vector<double> truth_csa;
    std::istringstream in(read_text(truth / "csa.csv"));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        truth_csa.push_back(std::stod(line.substr(line.find(',') + 1)));
    }
    truth_csa.resize(record.results.size());

    const EvalSummary summary = summarize(record, masks, truth_csa);
    const fs::path out_dir(cfg.out_dir);
    fs::create_directories(out_dir);
    write_text(out_dir / "eval.csv", summary.to_csv());
    write_text(out_dir / "summary.txt", summary.summary_line());
    out << summary.summary_line();
    return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Vessel lumen segmentation and tracking"};
    app.require_subcommand(1);

    PhantomCli pc;
    SegmentCli sc;
    EvalCli ec;

    CLI::App* phantom =
        app.add_subcommand("phantom", "Generate a synthetic speckle video");
    phantom->add_option("--preset", pc.preset, "distended | collapsing")
        ->capture_default_str();
    phantom->add_option("--frames", pc.spec.n_frames, "Number of frames")
        ->capture_default_str();
    phantom->add_option("--size", pc.size, "Frame size WxH")
        ->capture_default_str();
    phantom->add_option("--fps", pc.spec.fps, "Frame rate")
        ->capture_default_str();
    phantom->add_option("--rng-seed", pc.spec.rng_seed, "Speckle RNG seed")
        ->capture_default_str();
    phantom->add_option("--lumen", pc.spec.lumen_intensity, "Lumen intensity")
        ->capture_default_str();
    phantom
        ->add_option("--background", pc.spec.background_intensity,
                     "Background intensity")
        ->capture_default_str();
    phantom
        ->add_option("--speckle", pc.spec.speckle_strength,
                     "Speckle strength in [0,1]")
        ->capture_default_str();
    phantom->add_option("--center", pc.center,
                        "Vessel center X,Y (default frame center)");
    phantom->add_option("--axes", pc.axes,
                        "Base semi-axes A,B (default 40,26)");
    phantom
        ->add_option("--pulse-amplitude", pc.spec.pulse_amplitude,
                     "Pulsation amplitude fraction")
        ->capture_default_str();
    phantom->add_option("--pulse-hz", pc.spec.pulse_hz, "Pulsation frequency")
        ->capture_default_str();
    phantom
        ->add_option("--collapse-depth", pc.spec.collapse_depth,
                     "Collapse depth fraction (collapsing preset)")
        ->capture_default_str();
    phantom
        ->add_option("--collapse-hz", pc.spec.collapse_hz,
                     "Collapse (respiratory) frequency")
        ->capture_default_str();
    phantom->add_option("--out", pc.out_dir, "Output directory")->required();

    CLI::App* segment =
        app.add_subcommand("segment", "Segment and track a frame directory");
    segment->add_option("--input", sc.input_dir, "Directory of frame_%04d.pgm")
        ->required();
    segment->add_option("--seed", sc.seed, "Initial seed pixel X,Y")
        ->required();
    segment->add_option("--out", sc.out_dir, "Output directory")->required();
    segment
        ->add_option("--median-window", sc.params.filter.median_window,
                     "Median filter window (odd)")
        ->capture_default_str();
    segment
        ->add_option("--gaussian-sigma", sc.params.filter.gaussian_sigma,
                     "Gaussian sigma")
        ->capture_default_str();
    segment
        ->add_option("--gaussian-radius", sc.params.filter.gaussian_radius,
                     "Gaussian kernel radius")
        ->capture_default_str();
    segment->add_option("--alpha", sc.params.snake.alpha,
                        "First-derivative weight")
        ->capture_default_str();
    segment->add_option("--beta", sc.params.snake.beta,
                        "Second-derivative weight")
        ->capture_default_str();
    segment->add_option("--gamma", sc.params.snake.gamma, "Step damping")
        ->capture_default_str();
    segment
        ->add_option("--kappa-base", sc.params.snake.kappa_base,
                     "kappa(t) = kappa-base^(-t)")
        ->capture_default_str();
    segment->add_option("--kappa-cap", sc.params.snake.kappa_cap,
                        "Cap on kappa(t)")
        ->capture_default_str();
    segment
        ->add_option("--lumen-reference", sc.params.snake.lumen_reference,
                     "Reference intensity of the constraint term")
        ->capture_default_str();
    segment
        ->add_option("--w-scale", sc.params.snake.w_scale,
                     "Constraint weight scale")
        ->capture_default_str();
    segment
        ->add_option("--max-iterations", sc.params.snake.max_iterations,
                     "Snake iteration cap")
        ->capture_default_str();
    segment
        ->add_option("--tol", sc.params.snake.tol,
                     "Convergence tolerance (mean displacement, px)")
        ->capture_default_str();
    segment
        ->add_option("--n-points", sc.params.resample.n_points,
                     "Resampled contour points")
        ->capture_default_str();
    segment
        ->add_option("--dense-samples", sc.params.resample.dense_samples,
                     "Dense samples for arc-length resampling")
        ->capture_default_str();
    segment
        ->add_option("--max-fraction", sc.params.max_fraction,
                     "Region-growing leak guard (fraction of frame)")
        ->capture_default_str();
    segment->add_flag("--overlays", sc.overlays,
                      "Write overlay PGMs (contour burned at 255)");
    segment->add_flag("--trace", sc.trace,
                      "Write per-iteration snake trace CSVs");

    CLI::App* eval =
        app.add_subcommand("eval", "Evaluate a record against ground truth");
    eval->add_option("--pred", ec.pred_dir, "Segment output directory")
        ->required();
    eval->add_option("--truth", ec.truth_dir, "Truth directory")->required();
    eval->add_option("--out", ec.out_dir, "Output directory")->required();

    std::vector<const char*> argv;
    argv.push_back("ijvtrack");
    for (const std::string& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()),
                  const_cast<char**>(argv.data()));
    } catch (const CLI::CallForHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        err << app.help();
        return 1;
    }

    try {
        if (phantom->parsed()) return run_phantom(pc, err);
        if (segment->parsed()) return run_segment(sc, err);
        if (eval->parsed()) return run_eval(ec, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}

}  // namespace ijv::cli
