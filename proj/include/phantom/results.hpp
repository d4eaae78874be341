#pragma once

#include <cstdint>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "phantom/config.hpp"
#include "phantom/experiment.hpp"
#include "phantom/game.hpp"

namespace phantom {

/// Fixed formatting for every floating-point value we emit.
inline std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  out += '"';
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
  return out;
}

inline std::string_view to_string(Sampling s) { return s == Sampling::Strict ? "strict" : "knowledge-aware"; }

/// Everything needed to reproduce a simulate run.
struct RunConfig {
  GameConfig game;
  std::string maker;
  std::string breaker;
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  Sampling sampling = Sampling::KnowledgeAware;
};

inline std::string config_json(const RunConfig& rc) {
  std::ostringstream o;
  o << "{\"game\":" << json_escape(to_string(rc.game.game)) << ",\"n\":" << rc.game.n << ",\"a\":" << rc.game.a
    << ",\"b\":" << rc.game.b << ",\"k\":" << rc.game.k << ",\"maker\":" << json_escape(rc.maker)
    << ",\"breaker\":" << json_escape(rc.breaker) << ",\"trials\":" << rc.trials << ",\"seed\":" << rc.seed
    << ",\"sampling\":" << json_escape(to_string(rc.sampling)) << ",\"stall_cap\":" << rc.game.effective_stall_cap()
    << "}";
  return o.str();
}

inline std::string stats_json(const AggregateStats& s) {
  std::ostringstream o;
  o << "{\"trials\":" << s.trials << ",\"maker_wins\":" << s.maker_wins
    << ",\"frequency\":" << format_double(s.maker_frequency) << ",\"wilson\":[" << format_double(s.wilson_low) << ","
    << format_double(s.wilson_high) << "],\"z\":" << format_double(s.z)
    << ",\"mean_rounds\":" << format_double(s.mean_rounds) << ",\"mean_failures\":" << format_double(s.mean_failures)
    << ",\"dead_positions\":" << s.dead_positions << ",\"reasons\":{";
  for (std::size_t i = 0; i < kReasonNames.size(); ++i) {
    if (i) o << ",";
    o << json_escape(kReasonNames[i]) << ":" << s.reasons[i];
  }
  o << "}}";
  return o.str();
}

inline std::string record_json(const TrialRecord& r) {
  std::ostringstream o;
  o << "{\"seed\":" << r.seed << ",\"winner\":" << json_escape(to_string(r.winner))
    << ",\"reason\":" << json_escape(to_string(r.reason)) << ",\"rounds\":" << r.rounds_used
    << ",\"attempts\":" << r.maker_attempts << ",\"failures\":" << r.maker_failures
    << ",\"dead_position\":" << (r.dead_position ? "true" : "false");
  if (r.maker_edges) {
    o << ",\"maker_edges\":[";
    for (std::size_t i = 0; i < r.maker_edges->size(); ++i) {
      const Edge& e = (*r.maker_edges)[i];
      o << (i ? "," : "") << "[" << e.u << "," << e.v << "]";
    }
    o << "]";
  }
  if (r.transcript) {
    o << ",\"transcript\":[";
    for (std::size_t i = 0; i < r.transcript->size(); ++i) {
      const TranscriptEntry& t = (*r.transcript)[i];
      const char* out = t.outcome == MoveOutcome::Claimed ? "claimed" : "failed";
      o << (i ? "," : "") << "[" << json_escape(t.actor == Actor::Maker ? "M" : "B") << "," << t.edge.u << ","
        << t.edge.v << "," << json_escape(out) << "]";
    }
    o << "]";
  }
  o << "}";
  return o.str();
}

/// The simulate output document. Records are written only when requested.
inline std::string run_json(const RunConfig& rc, const TrialRun& run, bool with_records) {
  std::ostringstream o;
  o << "{\"config\":" << config_json(rc) << ",\"stats\":" << stats_json(run.stats);
  if (with_records) {
    o << ",\"records\":[";
    for (std::size_t i = 0; i < run.records.size(); ++i) o << (i ? "," : "") << record_json(run.records[i]);
    o << "]";
  }
  o << "}\n";
  return o.str();
}

inline constexpr std::string_view kSweepHeader =
    "game,n,a,b,k,maker,breaker,trials,maker_wins,frequency,wilson_lo,wilson_hi,mean_rounds";

}  // namespace phantom
