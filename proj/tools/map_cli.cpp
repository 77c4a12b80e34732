// Command-line front end: restore / noise / estimate / sample subcommands.

#include <chrono>
#include <cstdio>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "mapcut/mapcut.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string warning_names(const mapcut::EstimateResult& r) {
    std::string s;
    if (r.has_warning(mapcut::EstimateWarning::ClampedRatio)) s += "ClampedRatio";
    if (r.has_warning(mapcut::EstimateWarning::ClampedEpsilon)) {
        if (!s.empty()) s += ",";
        s += "ClampedEpsilon";
    }
    return s.empty() ? "-" : s;
}

struct RestoreOptions {
    std::string input, output;
    double beta = 0.3;
    double epsilon = -1.0;
    double h = -1.0;
    std::string planes = "11111111";
    std::string mode = "standard";
    std::string weighting = "uniform";
    std::vector<std::string> samples;
    std::vector<double> iterate;
    long long scale = 10000;
    int threads = 1;
};

// Restore one gray channel while reporting per-plane flow and wall time.
mapcut::GrayImage restore_channel_reporting(const mapcut::GrayImage& y,
                                            const mapcut::RestoreParams& params, bool hierarchical,
                                            const char* label) {
    mapcut::LayerStack stack = mapcut::decompose(y);
    std::vector<mapcut::BinaryImage> restored;
    for (int k = 1; k <= mapcut::kPlanesPerChannel; ++k) {
        if (!params.mask.contains(k)) {
            if (hierarchical) break; // prefix mask: nothing follows
            continue;
        }
        auto t0 = Clock::now();
        mapcut::GridNetwork net =
            hierarchical
                ? mapcut::build_hierarchical_network(stack.plane(k), restored,
                                                     mapcut::effective_alpha(params, k), params.scale)
                : mapcut::build_network(stack.plane(k), mapcut::effective_alpha(params, k),
                                        params.scale);
        mapcut::CutResult cut = mapcut::min_cut_labeling(net);
        std::printf("%s\t%d\t%lld\t%.3f\n", label, k, cut.flow_value, seconds_since(t0));
        if (hierarchical) restored.push_back(cut.labeling);
        stack.plane(k) = cut.labeling;
    }
    return mapcut::recompose(stack);
}

int run_restore(const RestoreOptions& opt) {
    mapcut::RestoreParams params;
    params.beta = opt.beta;
    params.scale = opt.scale;
    params.mask = mapcut::PlaneMask::from_string(opt.planes);
    params.weighting =
        opt.weighting == "layered" ? mapcut::Weighting::layered : mapcut::Weighting::uniform;
    params.h = opt.h >= 0 ? opt.h : mapcut::h_from_epsilon(opt.epsilon);

    bool hierarchical = (opt.mode == "hierarchical");

    if (!opt.samples.empty()) {
        std::vector<mapcut::GrayImage> grays;
        for (const std::string& path : opt.samples) {
            mapcut::AnyImage img = mapcut::read_image_file(path);
            if (!std::holds_alternative<mapcut::GrayImage>(img))
                throw mapcut::Error("multi-sample restore expects gray (PGM) inputs");
            grays.push_back(std::get<mapcut::GrayImage>(img));
        }
        auto t0 = Clock::now();
        mapcut::GrayImage out = mapcut::restore_multisample(grays, params);
        std::printf("multisample\t%zu\t-\t%.3f\n", grays.size(), seconds_since(t0));
        mapcut::write_image_file(opt.output, out);
        return 0;
    }

    mapcut::AnyImage img = mapcut::read_image_file(opt.input);

    if (!opt.iterate.empty()) {
        auto apply = [&](const mapcut::GrayImage& g) {
            return mapcut::iterate_restore(g, opt.iterate, params).back();
        };
        if (std::holds_alternative<mapcut::GrayImage>(img)) {
            mapcut::write_image_file(opt.output, apply(std::get<mapcut::GrayImage>(img)));
        } else {
            auto [r, g, b] = mapcut::split_channels(std::get<mapcut::RgbImage>(img));
            mapcut::write_image_file(opt.output,
                                     mapcut::merge_channels(apply(r), apply(g), apply(b)));
        }
        return 0;
    }

    std::printf("channel\tplane\tflow\tseconds\n");
    if (std::holds_alternative<mapcut::GrayImage>(img)) {
        mapcut::GrayImage out =
            restore_channel_reporting(std::get<mapcut::GrayImage>(img), params, hierarchical, "gray");
        mapcut::write_image_file(opt.output, out);
    } else {
        auto [r, g, b] = mapcut::split_channels(std::get<mapcut::RgbImage>(img));
        mapcut::RgbImage out = mapcut::merge_channels(
            restore_channel_reporting(r, params, hierarchical, "red"),
            restore_channel_reporting(g, params, hierarchical, "green"),
            restore_channel_reporting(b, params, hierarchical, "blue"));
        mapcut::write_image_file(opt.output, out);
    }
    return 0;
}

void print_estimates(const mapcut::GrayImage& img, const char* label) {
    for (const mapcut::LayerEstimate& e : mapcut::estimate_image(img)) {
        if (e.result) {
            std::printf("%s\t%d\t%.6f\t%.6f\t%.4f\t%.4f\t%s\n", label, e.plane, e.g1, e.g2,
                        e.result->beta_hat, e.result->epsilon_hat, warning_names(*e.result).c_str());
        } else {
            std::printf("%s\t%d\t%.6f\t%.6f\t-\t-\tDegenerateSample\n", label, e.plane, e.g1, e.g2);
        }
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact MAP restoration of bit-decomposed gray-scale and color images"};
    app.require_subcommand(1);

    RestoreOptions ropt;
    CLI::App* restore = app.add_subcommand("restore", "Restore a noisy image by per-plane min-cut");
    restore->set_help_flag("--help", "Print this help message"); // frees -h for the field option
    restore->add_option("--input", ropt.input, "Input PGM/PPM");
    restore->add_option("--output", ropt.output, "Output image")->required();
    restore->add_option("--beta", ropt.beta, "Smoothing strength (inverse temperature)");
    auto* eps_opt = restore->add_option("--epsilon", ropt.epsilon, "Bit-flip probability in (0,1)");
    auto* h_opt = restore->add_option("--h", ropt.h, "Field strength ln((1-eps)/eps)");
    eps_opt->excludes(h_opt);
    restore->add_option("--planes", ropt.planes, "8-char 0/1 mask, MSB first (default 11111111)");
    restore->add_option("--mode", ropt.mode, "standard | hierarchical")
        ->check(CLI::IsMember({"standard", "hierarchical"}));
    restore->add_option("--weighting", ropt.weighting, "uniform | layered")
        ->check(CLI::IsMember({"uniform", "layered"}));
    restore->add_option("--samples", ropt.samples, "Independent noisy observations (PGM)");
    restore->add_option("--iterate", ropt.iterate, "Nondecreasing alpha schedule");
    restore->add_option("--scale", ropt.scale, "Capacity units per 1.0 (default 10000)");
    restore->add_option("--threads", ropt.threads, "Worker thread cap");

    struct {
        std::string input, output;
        double epsilon = 0.1;
        std::uint64_t seed = 0;
        std::string planes = "11111111";
    } nopt;
    CLI::App* noise = app.add_subcommand("noise", "Flip each selected bit with probability epsilon");
    noise->add_option("--input", nopt.input)->required();
    noise->add_option("--output", nopt.output)->required();
    noise->add_option("--epsilon", nopt.epsilon)->required();
    noise->add_option("--seed", nopt.seed);
    noise->add_option("--planes", nopt.planes);

    struct {
        std::string input;
    } eopt;
    CLI::App* estimate = app.add_subcommand("estimate", "Estimate beta and epsilon per bit plane");
    estimate->add_option("--input", eopt.input)->required();

    struct {
        std::string output;
        int side = 256;
        double beta = 0.35;
        int sweeps = 500;
        std::uint64_t seed = 0;
    } sopt;
    CLI::App* sample = app.add_subcommand("sample", "Draw an Ising plane by Gibbs sampling");
    sample->add_option("--side", sopt.side);
    sample->add_option("--beta", sopt.beta)->required();
    sample->add_option("--sweeps", sopt.sweeps);
    sample->add_option("--seed", sopt.seed);
    sample->add_option("--output", sopt.output)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (restore->parsed()) {
            if (ropt.samples.empty() && ropt.input.empty()) {
                std::fprintf(stderr, "restore: --input (or --samples) is required\n");
                return 1;
            }
            if (ropt.h < 0 && (ropt.epsilon <= 0.0 || ropt.epsilon >= 1.0)) {
                std::fprintf(stderr, "restore: need --epsilon in (0,1) or --h\n");
                return 1;
            }
            return run_restore(ropt);
        }
        if (noise->parsed()) {
            mapcut::NoiseModel model{nopt.epsilon, nopt.seed};
            mapcut::PlaneMask mask = mapcut::PlaneMask::from_string(nopt.planes);
            mapcut::AnyImage img = mapcut::read_image_file(nopt.input);
            if (std::holds_alternative<mapcut::GrayImage>(img))
                mapcut::write_image_file(nopt.output,
                                         mapcut::corrupt(std::get<mapcut::GrayImage>(img), model, mask));
            else
                mapcut::write_image_file(nopt.output,
                                         mapcut::corrupt(std::get<mapcut::RgbImage>(img), model, mask));
            return 0;
        }
        if (estimate->parsed()) {
            mapcut::AnyImage img = mapcut::read_image_file(eopt.input);
            std::printf("channel\tplane\tG1\tG2\tbeta\tepsilon\twarnings\n");
            if (std::holds_alternative<mapcut::GrayImage>(img)) {
                print_estimates(std::get<mapcut::GrayImage>(img), "gray");
            } else {
                auto [r, g, b] = mapcut::split_channels(std::get<mapcut::RgbImage>(img));
                print_estimates(r, "red");
                print_estimates(g, "green");
                print_estimates(b, "blue");
            }
            return 0;
        }
        if (sample->parsed()) {
            mapcut::BinaryImage plane =
                mapcut::gibbs_sample(sopt.side, sopt.beta, sopt.sweeps, sopt.seed);
            mapcut::GrayImage img(plane.width, plane.height);
            for (std::size_t i = 0; i < plane.size(); ++i)
                img.pixels[i] = plane.bits[i] ? 255 : 0;
            mapcut::write_image_file(sopt.output, img);
            return 0;
        }
    } catch (const mapcut::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 1;
}
