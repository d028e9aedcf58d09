#include "perctrunc/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "perctrunc/errors.hpp"
#include "perctrunc/parallel.hpp"
#include "perctrunc/rng.hpp"

namespace perctrunc {

nlohmann::json estimate_to_json(const EstimateResult& est) {
  return nlohmann::json{{"estimate", est.estimate},
                        {"trials", est.trials},
                        {"successes", est.successes},
                        {"ci", {est.ci_lo, est.ci_hi}},
                        {"seed", est.seed}};
}

nlohmann::json make_record(nlohmann::json config, nlohmann::json result, double wall_ms) {
  const auto now = std::chrono::system_clock::now().time_since_epoch();
  nlohmann::json rec;
  rec["schema_version"] = kSchemaVersion;
  rec["config"] = std::move(config);
  rec["result"] = std::move(result);
  rec["meta"] = {
      {"timestamp_ms", std::chrono::duration_cast<std::chrono::milliseconds>(now).count()},
      {"wall_ms", wall_ms},
      {"threads", thread_count()},
  };
  return rec;
}

std::string payload_string(const nlohmann::json& record) {
  nlohmann::json payload;
  payload["schema_version"] = record.value("schema_version", "");
  payload["config"] = record.contains("config") ? record["config"] : nlohmann::json();
  payload["result"] = record.contains("result") ? record["result"] : nlohmann::json();
  return payload.dump();
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + path);
}

void validate_axis(const std::string& axis, const std::vector<double>& values) {
  if (values.empty()) throw ValidationError("sweep needs at least one axis value");
  if (axis == "K" || axis == "H" || axis == "L" || axis == "ph") {
    for (size_t i = 1; i < values.size(); ++i) {
      if (!(values[i] > values[i - 1])) {
        throw ValidationError("sweep values over " + axis + " must be strictly increasing");
      }
    }
  }
}

void write_sweep_csv(const std::string& path, const std::string& axis,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  out << axis << ",estimate,ci_lo,ci_hi,trials,successes\n";
  out.precision(17);
  for (const SweepRow& r : rows) {
    out << r.axis_value << ',' << r.est.estimate << ',' << r.est.ci_lo << ',' << r.est.ci_hi
        << ',' << r.est.trials << ',' << r.est.successes << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

namespace {

struct CsvPoint {
  double x, y, lo, hi;
};

}  // namespace

std::string render_sweep_svg(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("empty CSV");
  std::string axis = line.substr(0, line.find(','));
  std::vector<CsvPoint> pts;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    CsvPoint p{};
    double trials, succ;
    if (!(ls >> p.x >> p.y >> p.lo >> p.hi >> trials >> succ)) {
      throw ValidationError("malformed CSV row: " + line);
    }
    pts.push_back(p);
  }
  if (pts.empty()) throw ValidationError("CSV has no data rows");

  const double W = 640, H = 420, ml = 70, mr = 20, mt = 30, mb = 50;
  double x0 = pts.front().x, x1 = pts.back().x;
  if (x1 <= x0) x1 = x0 + 1;
  auto sx = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
  auto sy = [&](double y) { return H - mb - y * (H - mt - mb); };  // y in [0,1]

  std::ostringstream svg;
  svg.precision(6);
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << sy(0) << "\" x2=\"" << W - mr << "\" y2=\""
      << sy(0) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << sy(0) << "\" x2=\"" << ml << "\" y2=\"" << sy(1)
      << "\" stroke=\"black\"/>\n";
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    svg << "<line x1=\"" << ml - 4 << "\" y1=\"" << sy(g) << "\" x2=\"" << ml << "\" y2=\""
        << sy(g) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << sy(g) + 4
        << "\" text-anchor=\"end\" font-size=\"12\">" << g << "</text>\n";
  }
  svg << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
      << "\" text-anchor=\"middle\" font-size=\"13\">" << axis << "</text>\n"
      << "<text x=\"16\" y=\"" << (mt + H - mb) / 2
      << "\" font-size=\"13\" transform=\"rotate(-90 16 " << (mt + H - mb) / 2
      << ")\" text-anchor=\"middle\">estimate</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
  for (const auto& p : pts) svg << sx(p.x) << "," << sy(p.y) << " ";
  svg << "\"/>\n";
  for (const auto& p : pts) {
    svg << "<line x1=\"" << sx(p.x) << "\" y1=\"" << sy(p.lo) << "\" x2=\"" << sx(p.x)
        << "\" y2=\"" << sy(p.hi) << "\" stroke=\"#1f77b4\"/>\n"
        << "<circle cx=\"" << sx(p.x) << "\" cy=\"" << sy(p.y)
        << "\" r=\"3\" fill=\"#1f77b4\"/>\n"
        << "<text x=\"" << sx(p.x) << "\" y=\"" << sy(0) + 16
        << "\" text-anchor=\"middle\" font-size=\"11\">" << p.x << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void emit_plot(const std::string& csv_path, const std::string& svg_path) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open CSV: " + csv_path);
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string svg = render_sweep_svg(buf.str());
  std::ofstream out(svg_path);
  if (!out) throw IoError("cannot write " + svg_path);
  out << svg;
  if (!out) throw IoError("write failed: " + svg_path);
}

}  // namespace perctrunc
