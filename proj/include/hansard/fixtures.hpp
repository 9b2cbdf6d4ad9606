#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "hansard/corpus.hpp"
#include "hansard/dtm.hpp"
#include "hansard/errors.hpp"
#include "hansard/random.hpp"
#include "hansard/tsv.hpp"

// Deterministic test corpora. Speech texts are synthetic; only metadata
// shapes (names, parties, word counts, spending shares) mirror the real
// register. Every generator is a pure function of the seeds hard-wired
// here, so fixtures regenerate byte-identically.

namespace hansard {

// ---- model-generated count matrices --------------------------------------

struct SyntheticSpec {
  std::size_t n_docs = 20;
  std::size_t n_terms = 100;
  std::vector<double> true_omega;  // empty = equally spaced, standardized
  double psi_mean = 1.0;
  double psi_sd = 0.5;
  double beta_sd = 0.5;
  double alpha_sd = 0.3;
  std::uint64_t seed = 42;
};

struct SyntheticCorpus {
  CountMatrix matrix;
  std::vector<double> true_alpha;
  std::vector<double> true_psi;
  std::vector<double> true_beta;
  std::vector<double> true_omega;
};

namespace fx_detail {

inline void standardize(std::vector<double>& v) {
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / static_cast<double>(v.size()));
  for (double& x : v) x = (x - mean) / sd;
}

inline std::string doc_label(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "doc%03zu", i + 1);
  return buf;
}

inline std::string term_label(std::size_t j) {
  // Pronounceable, digit-free, stopword-free synthetic vocabulary.
  static const char* syl[] = {"ba", "de", "fi", "go", "lu", "mi",
                              "no", "pa", "re", "su", "ta", "ve"};
  std::string s;
  std::size_t x = j;
  for (int k = 0; k < 3; ++k) {
    s += syl[x % 12];
    x /= 12;
  }
  return s;
}

}  // namespace fx_detail

// Draws counts cellwise from Poisson(exp(alpha_i + psi_j + beta_j omega_i))
// and returns the truth beside the matrix.
inline SyntheticCorpus generate_wordfish_corpus(const SyntheticSpec& spec) {
  if (spec.n_docs < 2 || spec.n_terms < 2)
    throw DegenerateSpec("need at least 2 docs and 2 terms");
  if (spec.beta_sd <= 0.0)
    throw DegenerateSpec("beta_sd must be positive; all-zero word weights "
                         "generate an unscalable corpus");
  if (!spec.true_omega.empty() && spec.true_omega.size() != spec.n_docs)
    throw DegenerateSpec("true_omega length must equal n_docs");

  SyntheticCorpus out;
  out.true_omega = spec.true_omega;
  if (out.true_omega.empty()) {
    out.true_omega.resize(spec.n_docs);
    for (std::size_t i = 0; i < spec.n_docs; ++i)
      out.true_omega[i] = static_cast<double>(i);
  }
  fx_detail::standardize(out.true_omega);

  DetRng rng(spec.seed);
  out.true_psi.resize(spec.n_terms);
  out.true_beta.resize(spec.n_terms);
  for (std::size_t j = 0; j < spec.n_terms; ++j) {
    out.true_psi[j] = rng.normal(spec.psi_mean, spec.psi_sd);
    out.true_beta[j] = rng.normal(0.0, spec.beta_sd);
  }
  out.true_alpha.resize(spec.n_docs);
  for (std::size_t i = 0; i < spec.n_docs; ++i)
    out.true_alpha[i] = i == 0 ? 0.0 : rng.normal(0.0, spec.alpha_sd);

  CountMatrix& m = out.matrix;
  m.docs.resize(spec.n_docs);
  m.terms.resize(spec.n_terms);
  for (std::size_t i = 0; i < spec.n_docs; ++i) m.docs[i] = fx_detail::doc_label(i);
  for (std::size_t j = 0; j < spec.n_terms; ++j) m.terms[j] = fx_detail::term_label(j);
  m.counts.assign(spec.n_docs * spec.n_terms, 0);
  for (std::size_t i = 0; i < spec.n_docs; ++i) {
    for (std::size_t j = 0; j < spec.n_terms; ++j) {
      const double lambda = std::exp(out.true_alpha[i] + out.true_psi[j] +
                                     out.true_beta[j] * out.true_omega[i]);
      m.at(i, j) = rng.poisson(lambda);
    }
  }
  return out;
}

inline std::string truth_tsv(const SyntheticCorpus& c) {
  std::string out = tsv::join_row({"doc", "true_omega", "true_alpha"});
  for (std::size_t i = 0; i < c.matrix.n_docs(); ++i) {
    char o[32], a[32];
    std::snprintf(o, sizeof(o), "%.12g", c.true_omega[i]);
    std::snprintf(a, sizeof(a), "%.12g", c.true_alpha[i]);
    out += tsv::join_row({c.matrix.docs[i], o, a});
  }
  return out;
}

// ---- the 2008 budget-debate fixture ---------------------------------------

struct DebateSpeaker {
  std::string surname_first;  // register/table form, "Ahern, Bertie"
  std::string full_name;      // printed form, "Bertie Ahern"
  std::string party;
  bool government = false;
  std::uint64_t words = 0;    // exact speech length in tokens
  std::string member_id;
};

struct DebateFixture {
  std::vector<DebateSpeaker> speakers;
  std::vector<std::string> speeches;  // parallel to speakers, exact word counts
  CalendarDate date{2007, 12, 5};
  std::string debate_title = "Financial Resolution No. 5: General (Resumed)";
};

namespace fx_detail {

inline std::string member_slug(const std::string& full_name) {
  std::string s = "td-";
  for (char c : fold_for_match(full_name)) {
    if (c == ' ') {
      s.push_back('-');
    } else if ((c >= 'a' && c <= 'z')) {
      s.push_back(c);
    }
  }
  return s;
}

// Two topic vocabularies plus shared filler; government and opposition
// speeches draw from mirrored mixtures, which is what lets a scaling
// model separate the groups.
inline const std::vector<std::string>& government_vocab() {
  static const std::vector<std::string> v = {
      "investment", "growth",     "stability", "prudent",   "record",
      "delivery",   "progress",   "reform",    "enterprise", "employment",
      "surplus",    "competitive", "innovation", "prosperity", "responsible",
      "achievement", "sustainable", "confidence", "strength", "success"};
  return v;
}

inline const std::vector<std::string>& opposition_vocab() {
  static const std::vector<std::string> v = {
      "waste",      "failure",   "crisis",     "cutbacks",  "mismanagement",
      "broken",     "overruns",  "inequality", "spin",      "stealth",
      "arrogance",  "incompetence", "betrayal", "neglect",  "scandal",
      "complacency", "hardship", "unfairness", "excuses",   "decline"};
  return v;
}

inline const std::vector<std::string>& shared_vocab() {
  static const std::vector<std::string> v = {
      "budget",   "economy",  "taxation", "spending", "government",
      "people",   "country",  "year",     "public",   "services",
      "deputies", "resources", "measures", "increase", "housing",
      "health",   "education", "finance",  "programme", "future"};
  return v;
}

inline std::string mixture_speech(DetRng& rng, std::uint64_t n_tokens,
                                  double w_gov, double w_opp, double w_shared) {
  const auto& gov = government_vocab();
  const auto& opp = opposition_vocab();
  const auto& shared = shared_vocab();
  std::string text;
  for (std::uint64_t t = 0; t < n_tokens; ++t) {
    const double u = rng.u01();
    const std::vector<std::string>* pool;
    if (u < w_gov) {
      pool = &gov;
    } else if (u < w_gov + w_opp) {
      pool = &opp;
    } else {
      pool = &shared;
    }
    (void)w_shared;
    if (!text.empty()) text.push_back(' ');
    text += (*pool)[rng.below(pool->size())];
  }
  return text;
}

}  // namespace fx_detail

// Mirrors the 2008 budget-debate roster: 22 speakers, 10 from the
// government benches (FF plus Green), 12 opposition, word counts exact.
inline DebateFixture debate_fixture() {
  DebateFixture f;
  struct Row {
    const char* table_name;
    const char* full_name;
    const char* party;
    bool gov;
    std::uint64_t words;
  };
  static const Row rows[] = {
      {"Ahern, Bertie", "Bertie Ahern", "FF", true, 3959},
      {"Ahern, Dermot", "Dermot Ahern", "FF", true, 2700},
      {"Ahern, Michael", "Michael Ahern", "FF", true, 1190},
      {"Ardagh, Sean", "Sean Ardagh", "FF", true, 1015},
      {"Carey, Pat", "Pat Carey", "FF", true, 942},
      {"Cowen, Brian", "Brian Cowen", "FF", true, 8733},
      {"Dempsey, Noel", "Noel Dempsey", "FF", true, 1438},
      {"Devins, Jimmy", "Jimmy Devins", "FF", true, 1090},
      {"O'Keeffe, Batt", "Batt O'Keeffe", "FF", true, 715},
      {"Gormley, John", "John Gormley", "Green", true, 4306},
      {"Bruton, Richard", "Richard Bruton", "FG", false, 10817},
      {"Burke, Ulick", "Ulick Burke", "FG", false, 714},
      {"Hogan, Phil", "Phil Hogan", "FG", false, 1438},
      {"Kenny, Enda", "Enda Kenny", "FG", false, 3924},
      {"Neville, Dan", "Dan Neville", "FG", false, 1210},
      {"O'Donnell, Kieran", "Kieran O'Donnell", "FG", false, 1182},
      {"Reilly, James", "James Reilly", "FG", false, 1683},
      {"Varadkar, Leo", "Leo Varadkar", "FG", false, 1876},
      {"Gilmore, Eamon", "Eamon Gilmore", "Labour", false, 5141},
      {"Shortall, Roisin", "Roisin Shortall", "Labour", false, 2662},
      {"Morgan, Arthur", "Arthur Morgan", "SF", false, 6158},
      {"O'Caolain, Caoimhghin", "Caoimhghin O'Caolain", "SF", false, 1438},
  };
  DetRng rng(20071205);
  for (const Row& r : rows) {
    DebateSpeaker s;
    s.surname_first = r.table_name;
    s.full_name = r.full_name;
    s.party = r.party;
    s.government = r.gov;
    s.words = r.words;
    s.member_id = fx_detail::member_slug(r.full_name);
    f.speakers.push_back(s);
    f.speeches.push_back(
        r.gov ? fx_detail::mixture_speech(rng, r.words, 0.55, 0.05, 0.40)
              : fx_detail::mixture_speech(rng, r.words, 0.05, 0.55, 0.40));
  }
  return f;
}

// ---- the cabinet fixture ---------------------------------------------------

struct CabinetMinister {
  std::string full_name;
  std::string party;
  std::string department;
  bool high_spending = false;
  double position_seed = 0.0;  // pre-standardization position
  std::string member_id;
};

struct MinisterFixture {
  std::vector<CabinetMinister> ministers;
  SyntheticCorpus corpus;  // doc labels are member ids
  std::vector<std::pair<std::string, double>> spending;  // department -> share
  std::map<std::string, std::string> join;  // member_id -> department
  std::set<std::string> high_spending_departments;
  CalendarDate from{2002, 6, 6};
  CalendarDate to{2004, 9, 29};
  std::string debate_title = "Estimates for Public Services";
};

// Fourteen cabinet members with a spending-dimension position each.
// Departmental shares are constructed so that over the eight
// high-spending departments the correlation with the true positions is
// exactly -0.95, and the small non-spending departments dilute the
// all-cabinet relationship to a weak one.
inline MinisterFixture minister_fixture() {
  MinisterFixture f;
  struct Row {
    const char* name;
    const char* party;
    const char* department;
    bool high;
    double position;
  };
  static const Row rows[] = {
      {"Eamon O'Cuiv", "FF", "Community Rural and Gaeltacht Affairs", false, -1.50},
      {"Noel Dempsey", "FF", "Education and Science", true, -1.30},
      {"Micheal Martin", "FF", "Health and Children", true, -1.20},
      {"Mary Coughlan", "FF", "Social and Family Affairs", true, -0.70},
      {"Martin Cullen", "FF", "Environment and Local Government", true, -0.35},
      {"Seamus Brennan", "FF", "Transport", true, -0.10},
      {"Bertie Ahern", "FF", "Office of the Taoiseach", false, 0.00},
      {"Dermot Ahern", "FF", "Communications Marine and Natural Resources", false, 0.20},
      {"Brian Cowen", "FF", "Foreign Affairs", false, 0.35},
      {"Mary Harney", "PD", "Enterprise Trade and Employment", true, 0.60},
      {"Michael McDowell", "PD", "Justice Equality and Law Reform", false, 0.90},
      {"Michael Smith", "FF", "Defence", true, 1.05},
      {"Charlie McCreevy", "FF", "Finance", false, 1.30},
      {"John O'Donoghue", "FF", "Arts Sport and Tourism", true, 1.50},
  };
  std::vector<double> omega;
  for (const Row& r : rows) {
    CabinetMinister m;
    m.full_name = r.name;
    m.party = r.party;
    m.department = r.department;
    m.high_spending = r.high;
    m.position_seed = r.position;
    m.member_id = fx_detail::member_slug(r.name);
    f.ministers.push_back(m);
    f.join[m.member_id] = m.department;
    if (r.high) f.high_spending_departments.insert(r.department);
    omega.push_back(r.position);
  }
  fx_detail::standardize(omega);

  SyntheticSpec spec;
  spec.n_docs = f.ministers.size();
  spec.n_terms = 160;
  spec.true_omega = omega;
  spec.psi_mean = 1.6;
  spec.psi_sd = 0.35;
  spec.beta_sd = 0.45;
  spec.alpha_sd = 0.25;
  spec.seed = 29264;
  f.corpus = generate_wordfish_corpus(spec);
  for (std::size_t i = 0; i < f.ministers.size(); ++i)
    f.corpus.matrix.docs[i] = f.ministers[i].member_id;

  // High-spending shares: perfect negative relation to the positions plus
  // a fixed residual orthogonalized and scaled to land the correlation on
  // -0.95 exactly, then shifted positive and normalized to 95% of budget.
  std::vector<std::size_t> high_idx;
  for (std::size_t i = 0; i < f.ministers.size(); ++i)
    if (f.ministers[i].high_spending) high_idx.push_back(i);
  const std::size_t H = high_idx.size();
  std::vector<double> x(H), e(H);
  for (std::size_t k = 0; k < H; ++k) {
    x[k] = omega[high_idx[k]];
    e[k] = (k % 2 == 0) ? 1.0 : -1.0;  // fixed alternating pattern
  }
  double x_mean = 0.0;
  for (double v : x) x_mean += v;
  x_mean /= static_cast<double>(H);
  for (double& v : x) v -= x_mean;
  double ex = 0.0, xx = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    ex += e[k] * x[k];
    xx += x[k] * x[k];
  }
  double e_mean = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    e[k] -= (ex / xx) * x[k];
    e_mean += e[k];
  }
  e_mean /= static_cast<double>(H);
  double ee = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    e[k] -= e_mean;
    ee += e[k] * e[k];
  }
  const double target_r = 0.95;
  const double c =
      std::sqrt(xx / ee) * std::sqrt(1.0 / (target_r * target_r) - 1.0);
  std::vector<double> raw(H);
  double raw_min = 1e300, raw_max = -1e300;
  for (std::size_t k = 0; k < H; ++k) {
    raw[k] = -x[k] + c * e[k];
    raw_min = std::min(raw_min, raw[k]);
    raw_max = std::max(raw_max, raw[k]);
  }
  double total = 0.0;
  for (std::size_t k = 0; k < H; ++k) {
    raw[k] += -raw_min + 0.35 * (raw_max - raw_min);
    total += raw[k];
  }
  for (std::size_t k = 0; k < H; ++k) {
    f.spending.emplace_back(f.ministers[high_idx[k]].department,
                            0.95 * raw[k] / total);
  }
  // Non-spending departments: small fixed shares totalling 5%.
  static const std::pair<const char*, double> small[] = {
      {"Community Rural and Gaeltacht Affairs", 0.006},
      {"Office of the Taoiseach", 0.004},
      {"Communications Marine and Natural Resources", 0.009},
      {"Foreign Affairs", 0.008},
      {"Justice Equality and Law Reform", 0.011},
      {"Finance", 0.012},
  };
  for (const auto& [dept, share] : small) f.spending.emplace_back(dept, share);
  return f;
}

// ---- finance ministers' budget speeches ------------------------------------

struct BudgetSpeech {
  std::string minister;
  std::string member_id;
  CalendarDate date;
  std::string text;
};

struct BudgetFixture {
  std::vector<BudgetSpeech> speeches;
  std::string debate_title = "Budget Statement";
};

// A run of budget statements across the decades; "tax" is the dominant
// content word, with per-minister jitter on the rest of the vocabulary.
inline BudgetFixture budget_speeches_fixture() {
  BudgetFixture f;
  static const std::pair<const char*, int> ministers[] = {
      {"Ernest Blythe", 1923},    {"Sean MacEntee", 1933},
      {"Frank Aiken", 1946},      {"Patrick McGilligan", 1949},
      {"Jack Lynch", 1966},       {"Charles Haughey", 1967},
      {"George Colley", 1971},    {"Richie Ryan", 1974},
      {"Ruairi Quinn", 1995},     {"Charlie McCreevy", 1998},
      {"Brian Cowen", 2005},      {"Brian Lenihan", 2008},
  };
  static const char* content[] = {
      "tax",      "revenue",   "expenditure", "duty",      "income",
      "relief",   "exchequer", "provision",   "estimate",  "rate",
      "growth",   "deficit",   "borrowing",   "allowance", "pension",
      "customs",  "excise",    "employment",  "industry",  "agriculture"};
  static const char* stop[] = {"the", "of", "to", "in", "and",
                               "for", "a",  "is", "we", "on"};
  DetRng rng(19230420);
  for (const auto& [name, first_year] : ministers) {
    // Per-minister emphasis over the non-tax vocabulary.
    std::vector<double> weights(std::size(content));
    weights[0] = 10.0;  // "tax" outweighs everything else
    for (std::size_t w = 1; w < weights.size(); ++w)
      weights[w] = 0.5 + 3.0 * rng.u01();
    for (int k = 0; k < 3; ++k) {
      BudgetSpeech s;
      s.minister = name;
      s.member_id = fx_detail::member_slug(name);
      s.date = CalendarDate{first_year + k, 4, 20 - k};
      const std::uint64_t n_tokens = 320 + rng.below(240);
      std::string text;
      for (std::uint64_t t = 0; t < n_tokens; ++t) {
        if (!text.empty()) text.push_back(' ');
        const double u = rng.u01();
        if (u < 0.35) {
          text += stop[rng.below(std::size(stop))];
        } else if (u < 0.40) {
          text += std::to_string(1900 + rng.below(110));  // figures, cleaned away
        } else {
          text += content[sample_index(rng, weights)];
        }
      }
      s.text = std::move(text);
      f.speeches.push_back(std::move(s));
    }
  }
  return f;
}

// ---- members register over all fixtures ------------------------------------

inline std::vector<Member> fixture_register() {
  std::map<std::string, Member> members;
  auto add = [&](const std::string& full_name, const std::string& party,
                 CalendarDate from, CalendarDate to, const char* constituency) {
    Member m;
    m.member_id = fx_detail::member_slug(full_name);
    m.canonical_name = full_name;
    m.party = party;
    m.constituency = constituency;
    m.active_from = from;
    m.active_to = to;
    members.emplace(m.member_id, m);  // first writer wins
  };
  for (const auto& s : debate_fixture().speakers)
    add(s.full_name, s.party, {1997, 6, 6}, {2011, 3, 8}, "Dublin Central");
  for (const auto& m : minister_fixture().ministers)
    add(m.full_name, m.party, {1997, 6, 6}, {2011, 3, 8}, "Dublin Central");
  for (const auto& s : budget_speeches_fixture().speeches)
    add(s.minister, "FF", {CalendarDate{s.date.year - 4, 1, 1}},
        {CalendarDate{s.date.year + 12, 12, 31}}, "Cork North-Central");
  std::vector<Member> out;
  for (auto& [_, m] : members) out.push_back(std::move(m));
  return out;
}

}  // namespace hansard
