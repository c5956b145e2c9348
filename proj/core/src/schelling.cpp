#include "ssdlab/schelling.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "ssdlab/errors.hpp"

namespace ssdlab {

PayoffMatrix parse_payoffs(std::string_view text) {
  std::vector<double> values;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string word;
    while (words >> word) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(word, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != word.size() || !std::isfinite(v)) {
        throw ParseError("not a number: '" + word + "'", line_no);
      }
      values.push_back(v);
    }
  }
  if (values.size() != 4) {
    throw ParseError("expected 4 payoffs, found " + std::to_string(values.size()), line_no);
  }
  return {values[0], values[1], values[2], values[3]};
}

PayoffMatrix read_payoff_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open payoff file: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_payoffs(ss.str());
}

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::CC: return "(c,c)";
    case Profile::CD: return "(c,d)";
    case Profile::DC: return "(d,c)";
    case Profile::DD: return "(d,d)";
  }
  return "?";
}

std::vector<Profile> pure_nash(const PayoffMatrix& m) {
  std::vector<Profile> out;
  if (m.reward >= m.temptation) out.push_back(Profile::CC);
  if (m.sucker >= m.punishment && m.temptation >= m.reward) {
    out.push_back(Profile::CD);
    out.push_back(Profile::DC);
  }
  if (m.punishment >= m.sucker) out.push_back(Profile::DD);
  return out;
}

void SchellingDiagram::validate() const {
  const auto n = static_cast<std::size_t>(num_players);
  if (num_players < 2) throw DomainError("a Schelling diagram needs at least 2 players");
  if (cooperator.size() != n || defector.size() != n) {
    throw ConfigError("diagram curves must have one entry per player");
  }
  if (has_errors() && (cooperator_stderr.size() != n || defector_stderr.size() != n)) {
    throw ConfigError("diagram standard errors must have one entry per player");
  }
}

SchellingDiagram matrix_schelling(const PayoffMatrix& m) {
  SchellingDiagram d;
  d.num_players = 2;
  d.cooperator = {m.sucker, m.reward};
  d.defector = {m.punishment, m.temptation};
  return d;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

Verdict all_of(std::initializer_list<Verdict> vs) {
  bool unsure = false;
  for (Verdict v : vs) {
    if (v == Verdict::False) return Verdict::False;
    if (v == Verdict::Inconclusive) unsure = true;
  }
  return unsure ? Verdict::Inconclusive : Verdict::True;
}

Verdict any_of(Verdict a, Verdict b) {
  if (a == Verdict::True || b == Verdict::True) return Verdict::True;
  if (a == Verdict::Inconclusive || b == Verdict::Inconclusive) return Verdict::Inconclusive;
  return Verdict::False;
}

Verdict greater(double a, double a_err, double b, double b_err) {
  const double spread = a_err + b_err;
  if (spread > 0.0 && std::abs(a - b) <= spread) return Verdict::Inconclusive;
  return a > b ? Verdict::True : Verdict::False;
}

}  // namespace

SsdVerdict classify_ssd(const SchellingDiagram& d, const ClassifyOptions& options) {
  d.validate();
  if (!(options.threshold_fraction > 0.0 && options.threshold_fraction <= 1.0)) {
    throw ConfigError("threshold_fraction must be in (0,1]");
  }
  const int n = d.num_players;
  auto c_err = [&](int l) { return d.has_errors() ? d.cooperator_stderr[l] : 0.0; };
  auto d_err = [&](int l) { return d.has_errors() ? d.defector_stderr[l] : 0.0; };
  auto defect_wins = [&](int l) { return greater(d.defector[l], d_err(l), d.cooperator[l], c_err(l)); };

  SsdVerdict v;
  v.mutual_cooperation_beats_defection =
      greater(d.cooperator[n - 1], c_err(n - 1), d.defector[0], d_err(0));
  v.cooperation_beats_exploited = greater(d.cooperator[n - 1], c_err(n - 1), d.cooperator[0], c_err(0));

  const int span = std::max(1, static_cast<int>(std::ceil(n * options.threshold_fraction - 1e-12)));
  v.fear = Verdict::True;
  v.greed = Verdict::True;
  for (int l = 0; l < span; ++l) v.fear = all_of({v.fear, defect_wins(l)});
  for (int l = n - span; l < n; ++l) v.greed = all_of({v.greed, defect_wins(l)});

  v.is_ssd = all_of({v.mutual_cooperation_beats_defection, v.cooperation_beats_exploited,
                     any_of(v.fear, v.greed)});
  return v;
}

}  // namespace ssdlab
