// kitefold: hinged mirror dissections of polygons.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "kitefold/pipeline.hpp"

using namespace kitefold;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 1;
constexpr int kExitInput = 2;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::CollinearInput:
    case ErrorCode::SelfIntersecting:
    case ErrorCode::HoleOutsideOuter:
    case ErrorCode::DegenerateArea:
    case ErrorCode::DuplicateVertex:
    case ErrorCode::NotSimple:
    case ErrorCode::NotScalene:
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::ParameterOutOfRange:
    case ErrorCode::AreaOutOfRange:
    case ErrorCode::AreaMismatch:
      return kExitInput;
    default:
      return kExitVerification;
  }
}

DissectionDocument load_dissection(const std::string& path) {
  const std::string text = read_text(path);
  try {
    if (is_refinement_document(text)) {
      throw Error(ErrorCode::ParseError, "expected a dissection document, found a refinement");
    }
    return parse_dissection(text);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message());
  }
}

void report_mirror(const std::string& label, const MirrorReport& r, double verify_tol) {
  std::printf("%s: %s (max deviation %.3g, tolerance %.3g)\n", label.c_str(), r.ok ? "ok" : "FAILED",
              r.max_deviation, verify_tol);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hinged mirror dissections of polygons"};
  app.require_subcommand(1);
  double tolerance = 1.0;
  app.add_option("--tolerance", tolerance, "Scale factor for the verification tolerance")
      ->check(CLI::PositiveNumber);

  std::string input;
  std::string output;
  std::string second;
  double at = 0.0;
  int frames = 2;

  auto* dissect = app.add_subcommand("dissect", "Dissect a polygon into a hinged chain");
  dissect->add_option("input", input, "Polygon file")->required();
  dissect->add_option("-o,--output", output, "Dissection document")->required();

  auto* render = app.add_subcommand("render", "Render one configuration as SVG");
  render->add_option("document", input, "Dissection document")->required();
  render->add_option("--at", at, "Fold parameter in [0, 1]")->required();
  render->add_option("-o,--output", output, "SVG file")->required();

  auto* animate = app.add_subcommand("animate", "Render frames at t = i/(N-1)");
  animate->add_option("document", input, "Dissection document")->required();
  animate->add_option("--frames", frames, "Number of frames")->required()->check(CLI::PositiveNumber);
  animate->add_option("-o,--output", output, "Output directory")->required();

  auto* verify = app.add_subcommand("verify", "Check that the chain refolds into the mirror image");
  verify->add_option("document", input, "Dissection or refinement document")->required();

  auto* triangle3 = app.add_subcommand("triangle3", "Three-piece dissection of a scalene triangle");
  triangle3->add_option("input", input, "Triangle file")->required();
  triangle3->add_option("-o,--output", output, "Dissection document")->required();

  auto* refine = app.add_subcommand("refine", "Common refinement of two equal-area dissections");
  refine->add_option("first", input, "Dissection document")->required();
  refine->add_option("second", second, "Dissection document")->required();
  refine->add_option("-o,--output", output, "Refinement document")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  PipelineOptions options;
  options.tol.verify_tol *= tolerance;

  try {
    if (*dissect) {
      const auto polygon = load_polygon(input, options.tol);
      const auto doc = run_pipeline(polygon, options);
      write_text(output, serialize(doc));
      std::printf("%d pieces from %d large kites and %d circles\n", doc.stats.piece_count,
                  doc.stats.large_kite_count, doc.stats.circle_count);
    } else if (*render) {
      if (!(at >= 0.0 && at <= 1.0)) throw Error(ErrorCode::ParameterOutOfRange, "--at must lie in [0, 1]");
      write_svg(load_dissection(input), at, output);
    } else if (*animate) {
      const auto doc = load_dissection(input);
      std::filesystem::create_directories(output);
      for (int i = 0; i < frames; ++i) {
        const double t = frames == 1 ? 0.0 : static_cast<double>(i) / (frames - 1);
        char name[32];
        std::snprintf(name, sizeof name, "frame_%04d.svg", i);
        write_svg(doc, t, std::filesystem::path(output) / name);
      }
    } else if (*verify) {
      const std::string text = read_text(input);
      bool ok = true;
      if (is_refinement_document(text)) {
        const auto doc = parse_refinement(text);
        for (std::size_t i = 0; i < doc.chains.size(); ++i) {
          const auto r = verify_document(doc.chains[i], options.tol);
          report_mirror("chain " + std::to_string(i), r, options.tol.verify_tol);
          ok = ok && r.ok;
        }
      } else {
        const auto r = verify_document(parse_dissection(text), options.tol);
        report_mirror("mirror", r, options.tol.verify_tol);
        ok = r.ok;
      }
      return ok ? kExitOk : kExitVerification;
    } else if (*triangle3) {
      const auto polygon = load_polygon(input, options.tol);
      write_text(output, serialize(triangle3_document(polygon, options)));
    } else if (*refine) {
      const auto doc = refine_documents(load_dissection(input), load_dissection(second), options);
      write_text(output, serialize(doc));
      std::printf("refined to %d and %d pieces\n", doc.chains[0].stats.piece_count,
                  doc.chains[1].stats.piece_count);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
