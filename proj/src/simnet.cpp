#include "coordnet/simnet.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coordnet/rng.hpp"
#include "coordnet/text.hpp"

namespace coordnet::simnet {

double sparse_dot(const SparseVec& a, const SparseVec& b) {
  double dot = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first == ib->first) {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    } else if (ia->first < ib->first) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return dot;
}

double sparse_norm(const SparseVec& a) {
  double sq = 0.0;
  for (const auto& [idx, v] : a) sq += v * v;
  return std::sqrt(sq);
}

BipartiteGraph build_bipartite(const std::vector<TraceEvent>& events) {
  BipartiteGraph g;
  if (events.empty()) return g;

  std::map<std::string, int> user_index;
  std::map<std::string, int> entity_index;
  for (const TraceEvent& ev : events) {
    user_index.emplace(ev.user_id, 0);
    entity_index.emplace(ev.entity_id, 0);
  }
  g.users.reserve(user_index.size());
  for (auto& [id, idx] : user_index) {
    idx = static_cast<int>(g.users.size());
    g.users.push_back(id);
  }
  g.entities.reserve(entity_index.size());
  for (auto& [id, idx] : entity_index) {
    idx = static_cast<int>(g.entities.size());
    g.entities.push_back(id);
  }

  g.rows.resize(g.users.size());
  for (const TraceEvent& ev : events) {
    if (ev.count == 0) throw std::invalid_argument("trace event with zero count");
    g.rows[user_index[ev.user_id]].emplace_back(entity_index[ev.entity_id],
                                                static_cast<double>(ev.count));
  }
  for (SparseVec& row : g.rows) {
    std::sort(row.begin(), row.end());
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first)
        throw std::invalid_argument("duplicate (user, entity) event");
  }
  return g;
}

UserVectors tfidf_transform(const BipartiteGraph& g) {
  UserVectors out;
  if (g.empty()) return out;

  const std::size_t n_users = g.user_count();
  std::vector<std::size_t> df(g.entity_count(), 0);
  for (const SparseVec& row : g.rows)
    for (const auto& [col, count] : row) ++df[col];

  std::vector<double> idf(g.entity_count());
  for (std::size_t e = 0; e < df.size(); ++e)
    idf[e] = std::log(static_cast<double>(n_users) / static_cast<double>(df[e]));

  for (std::size_t u = 0; u < n_users; ++u) {
    SparseVec row;
    for (const auto& [col, count] : g.rows[u]) {
      double w = count * idf[col];
      if (w > 0.0) row.emplace_back(col, w);
    }
    if (row.empty()) continue;  // every entity shared by all users
    out.users.push_back(g.users[u]);
    out.rows.push_back(std::move(row));
  }
  return out;
}

SimilarityNetwork cosine_project(const UserVectors& v, const std::string& kind) {
  // Nodes are edge endpoints only: a user sharing no entity with anyone
  // is not captured by this trace's network.
  SimilarityNetwork net(kind);
  if (v.empty()) {
    net.finalize();
    return net;
  }

  const int n = static_cast<int>(v.users.size());

  // Unit-normalize rows, then build an inverted index over entities so
  // only pairs sharing at least one entity are ever compared.
  std::vector<SparseVec> unit(v.rows.size());
  int max_col = 0;
  for (int u = 0; u < n; ++u) {
    double norm = sparse_norm(v.rows[u]);
    unit[u].reserve(v.rows[u].size());
    for (const auto& [col, w] : v.rows[u]) {
      unit[u].emplace_back(col, w / norm);
      max_col = std::max(max_col, col);
    }
  }
  std::vector<std::vector<std::pair<int, double>>> postings(max_col + 1);
  for (int u = 0; u < n; ++u)
    for (const auto& [col, w] : unit[u]) postings[col].emplace_back(u, w);

  std::vector<double> acc(n, 0.0);
  std::vector<int> touched;
  for (int u = 0; u < n; ++u) {
    touched.clear();
    for (const auto& [col, wu] : unit[u]) {
      for (const auto& [w_user, ww] : postings[col]) {
        if (w_user <= u) continue;
        if (acc[w_user] == 0.0) touched.push_back(w_user);
        acc[w_user] += wu * ww;
      }
    }
    std::sort(touched.begin(), touched.end());
    for (int w_user : touched) {
      double cosine = acc[w_user];
      acc[w_user] = 0.0;
      if (cosine > 0.0)
        net.add_edge(v.users[u], v.users[w_user], std::min(cosine, 1.0));
    }
  }
  net.finalize();
  return net;
}

SimilarityNetwork build_trace_network(const std::vector<TraceEvent>& events,
                                      TraceKind kind) {
  return cosine_project(tfidf_transform(build_bipartite(events)),
                        trace_kind_name(kind));
}

// -- text similarity ----------------------------------------------------

std::unordered_map<std::string, SparseVec> HashedTfidfEmbedder::embed(
    const traces::DocumentSet& docs) const {
  // Hashed term counts per document, then smoothed idf and L2 norm.
  std::vector<std::map<int, double>> counts(docs.docs.size());
  std::unordered_map<int, std::size_t> df;
  for (std::size_t d = 0; d < docs.docs.size(); ++d) {
    auto words = split_words(docs.docs[d].cleaned_text);
    auto bucket = [&](const std::string& term) {
      return static_cast<int>(fnv1a64(term) % static_cast<std::uint64_t>(dim_));
    };
    for (std::size_t i = 0; i < words.size(); ++i) {
      ++counts[d][bucket(words[i])];
      if (i + 1 < words.size()) ++counts[d][bucket(words[i] + " " + words[i + 1])];
    }
    for (const auto& [b, c] : counts[d]) ++df[b];
  }

  const double n = static_cast<double>(docs.docs.size());
  std::unordered_map<std::string, SparseVec> out;
  out.reserve(docs.docs.size());
  for (std::size_t d = 0; d < docs.docs.size(); ++d) {
    SparseVec vec;
    vec.reserve(counts[d].size());
    for (const auto& [b, c] : counts[d]) {
      double idf = std::log((1.0 + n) / (1.0 + static_cast<double>(df[b]))) + 1.0;
      vec.emplace_back(b, c * idf);
    }
    double norm = sparse_norm(vec);
    if (norm > 0.0)
      for (auto& [b, w] : vec) w /= norm;
    out.emplace(docs.docs[d].tweet_id, std::move(vec));
  }
  return out;
}

std::unordered_map<std::string, SparseVec> PrecomputedEmbedder::embed(
    const traces::DocumentSet& docs) const {
  std::ifstream in(path_);
  if (!in) throw std::runtime_error("cannot open vector file: " + path_);
  std::unordered_map<std::string, SparseVec> all;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string id;
    fields >> id;
    SparseVec vec;
    double value;
    int idx = 0;
    while (fields >> value) {
      if (value != 0.0) vec.emplace_back(idx, value);
      ++idx;
    }
    double norm = sparse_norm(vec);
    if (norm > 0.0)
      for (auto& [i, w] : vec) w /= norm;
    all.emplace(std::move(id), std::move(vec));
  }

  std::unordered_map<std::string, SparseVec> out;
  out.reserve(docs.docs.size());
  for (const traces::Document& doc : docs.docs) {
    auto it = all.find(doc.tweet_id);
    if (it == all.end())
      throw std::runtime_error("vector file " + path_ + " is missing tweet " + doc.tweet_id);
    out.emplace(doc.tweet_id, it->second);
  }
  return out;
}

std::unordered_map<std::string, SparseVec> embed_documents(
    const traces::DocumentSet& docs, const DocumentEmbedder& embedder) {
  if (docs.docs.empty()) throw std::invalid_argument("document set is empty");
  return embedder.embed(docs);
}

SimilarityNetwork text_similarity_network(
    const traces::DocumentSet& docs,
    const std::unordered_map<std::string, SparseVec>& vectors,
    double sim_threshold, int window_days) {
  if (!(sim_threshold > 0.0) || sim_threshold > 1.0)
    throw std::invalid_argument("sim_threshold must be in (0,1]");
  SimilarityNetwork net("text_sim");
  if (docs.docs.empty()) {
    net.finalize();
    return net;
  }

  // Docs sorted by (timestamp, tweet_id) so results are independent of
  // input order; vectors are unit length so cosine == dot.
  std::vector<const traces::Document*> order;
  order.reserve(docs.docs.size());
  for (const traces::Document& d : docs.docs) order.push_back(&d);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    return a->timestamp != b->timestamp ? a->timestamp < b->timestamp
                                        : a->tweet_id < b->tweet_id;
  });

  const std::int64_t window = static_cast<std::int64_t>(window_days) * 86400;
  const int n = static_cast<int>(order.size());

  std::vector<const SparseVec*> vecs(n);
  for (int i = 0; i < n; ++i) {
    auto it = vectors.find(order[i]->tweet_id);
    if (it == vectors.end())
      throw std::runtime_error("no vector for tweet " + order[i]->tweet_id);
    vecs[i] = &it->second;
  }

  int max_dim = 0;
  for (const SparseVec* v : vecs)
    if (!v->empty()) max_dim = std::max(max_dim, v->back().first);

  std::map<std::string, int> user_index;
  std::vector<std::string> user_names;
  std::vector<int> doc_user(n);
  for (int i = 0; i < n; ++i) {
    auto [it, fresh] = user_index.emplace(order[i]->user_id,
                                          static_cast<int>(user_names.size()));
    if (fresh) user_names.push_back(order[i]->user_id);
    doc_user[i] = it->second;
  }

  // Postings per dimension hold (doc, weight) in timestamp order; the
  // head pointer drops docs that fell out of the window, so only
  // in-window pairs sharing a dimension are ever compared.
  std::vector<std::vector<std::pair<int, double>>> postings(max_dim + 1);
  std::vector<std::size_t> head(max_dim + 1, 0);

  struct PairStats {
    double sum = 0.0;
    std::size_t count = 0;
  };
  std::map<std::pair<int, int>, PairStats> pair_stats;

  std::vector<double> acc(n, 0.0);
  std::vector<int> touched;
  for (int j = 0; j < n; ++j) {
    touched.clear();
    for (const auto& [dim, wj] : *vecs[j]) {
      auto& plist = postings[dim];
      std::size_t& h = head[dim];
      while (h < plist.size() &&
             order[j]->timestamp - order[plist[h].first]->timestamp > window)
        ++h;
      for (std::size_t k = h; k < plist.size(); ++k) {
        const auto& [i, wi] = plist[k];
        if (acc[i] == 0.0) touched.push_back(i);
        acc[i] += wi * wj;
      }
      plist.emplace_back(j, wj);
    }
    std::sort(touched.begin(), touched.end());
    for (int i : touched) {
      double cosine = acc[i];
      acc[i] = 0.0;
      if (doc_user[i] == doc_user[j]) continue;
      if (cosine < sim_threshold) continue;
      int a = std::min(doc_user[i], doc_user[j]);
      int b = std::max(doc_user[i], doc_user[j]);
      auto& st = pair_stats[{a, b}];
      st.sum += std::min(cosine, 1.0);
      ++st.count;
    }
  }

  for (const auto& [key, st] : pair_stats) {
    net.add_edge(user_names[key.first], user_names[key.second],
                 st.sum / static_cast<double>(st.count));
  }
  net.finalize();
  return net;
}

}  // namespace coordnet::simnet
