#include <cmath>
#include <cstdio>
#include <sstream>

#include "chordlearn/cli/pipeline.hpp"

namespace chordlearn {

namespace {

std::string fixed(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string share_text(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return fixed(r.to_double());
}

double round4(double value) { return std::round(value * 10000.0) / 10000.0; }

std::string pad(std::string text, std::size_t width) {
  if (text.size() < width) text.append(width - text.size(), ' ');
  return text;
}

std::string lpad(std::string text, std::size_t width) {
  if (text.size() < width) text.insert(0, width - text.size(), ' ');
  return text;
}

}  // namespace

std::string render_report(const CompressionReport& report) {
  std::ostringstream out;
  std::size_t width = 10;
  for (const auto& row : report.rows) width = std::max(width, row.title.size() + 2);
  out << "Mode: " << to_string(report.mode) << "\n";
  out << pad("Piece", width) << lpad("w/o lib", 9) << lpad("with lib", 10) << lpad("storage", 10) << lpad("CR", 7)
      << "\n";
  for (const auto& row : report.rows) {
    out << pad(row.title, width);
    if (!row.parsed) {
      out << lpad(std::to_string(row.baseline), 9) << "  no complete parse\n";
      continue;
    }
    out << lpad(std::to_string(row.baseline), 9) << lpad(std::to_string(row.refactored), 10)
        << lpad(share_text(row.storage_share), 10) << lpad(fixed(row.cr()), 7) << "\n";
  }
  out << pad("Total", width) << lpad(std::to_string(report.baseline), 9) << lpad(std::to_string(report.refactored), 10)
      << lpad(std::to_string(report.storage), 10) << lpad(fixed(report.cr()), 7) << "\n";
  return out.str();
}

nlohmann::json report_to_json(const CompressionReport& report) {
  nlohmann::json out;
  out["mode"] = to_string(report.mode);
  out["rows"] = nlohmann::json::array();
  for (const auto& row : report.rows) {
    nlohmann::json r{{"title", row.title}, {"parsed", row.parsed}, {"baseline", row.baseline}};
    if (row.parsed) {
      r["refactored"] = row.refactored;
      r["storage_share"] = {{"numerator", row.storage_share.numerator()},
                            {"denominator", row.storage_share.denominator()},
                            {"text", share_text(row.storage_share)}};
      r["cr"] = round4(row.cr());
    }
    out["rows"].push_back(std::move(r));
  }
  out["total"] = {{"baseline", report.baseline},
                  {"refactored", report.refactored},
                  {"storage", report.storage},
                  {"cr", round4(report.cr())}};
  out["runs"] = nlohmann::json::array();
  for (const auto& run : report.runs) {
    nlohmann::json pieces = nlohmann::json::array();
    for (const auto& p : run.pieces)
      pieces.push_back({{"title", p.title},
                        {"length", p.chords.size()},
                        {"derivations", p.derivations.str()},
                        {"full_span_heads", p.heads}});
    out["runs"].push_back({{"pieces", pieces},
                           {"candidates", run.candidates},
                           {"egraph_nodes", run.egraph_nodes},
                           {"saturated_nodes", run.saturated_nodes},
                           {"rewrite_applications", run.rewrites.applications},
                           {"storage", run.storage},
                           {"library", library_to_json(run)},
                           {"programs", programs_to_json(run)}});
  }
  return out;
}

std::string render_reference_diff(const CompressionReport& joint, const CompressionReport& piecewise,
                                  const nlohmann::json& reference) {
  std::ostringstream out;
  std::size_t width = 12;
  for (const auto& row : joint.rows) width = std::max(width, row.title.size() + 2);
  auto cell = [](const std::string& ours, const std::string& ref) { return lpad(ours + " / " + ref, 16); };

  for (const auto* report : {&joint, &piecewise}) {
    const auto& ref = reference.at(to_string(report->mode));
    out << "Against the reference table, " << to_string(report->mode) << " (ours / reference):\n";
    out << pad("Piece", width) << lpad("with lib", 16) << lpad("storage", 16) << lpad("CR", 16) << "\n";
    for (const auto& row : report->rows) {
      out << pad(row.title, width);
      if (!ref.at("refactored").contains(row.title) || !row.parsed) {
        out << "  (no reference row)\n";
        continue;
      }
      out << cell(std::to_string(row.refactored), ref["refactored"][row.title].dump())
          << cell(share_text(row.storage_share), fixed(ref["storage_share"][row.title].get<double>()))
          << cell(fixed(row.cr()), fixed(ref["cr"][row.title].get<double>())) << "\n";
    }
    const auto& total = ref.at("total");
    out << pad("Total", width) << cell(std::to_string(report->refactored), total["refactored"].dump())
        << cell(std::to_string(report->storage), total["storage"].dump())
        << cell(fixed(report->cr()), fixed(total["cr"].get<double>())) << "\n";
    out << "  baseline " << report->baseline << " / " << total["baseline"].dump() << "\n\n";
  }
  return out.str();
}

}  // namespace chordlearn
