#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coordnet/ablation.hpp"
#include "coordnet/classify.hpp"
#include "coordnet/detect.hpp"
#include "coordnet/embed.hpp"
#include "coordnet/eval.hpp"
#include "coordnet/ingest.hpp"
#include "coordnet/pipeline.hpp"
#include "coordnet/rng.hpp"
#include "coordnet/simnet.hpp"
#include "coordnet/synth.hpp"
#include "coordnet/text.hpp"
#include "coordnet/traces.hpp"

namespace py = pybind11;
using namespace coordnet;

namespace {

traces::TraceParams params_from_kwargs(int min_hashtags, std::int64_t max_delay_seconds) {
  traces::TraceParams p;
  p.min_hashtags = min_hashtags;
  p.max_delay_seconds = max_delay_seconds;
  return p;
}

py::dict report_to_dict(const classify::EvalReport& r) {
  py::dict d;
  d["precision"] = r.precision;
  d["recall"] = r.recall;
  d["f1"] = r.f1;
  d["auc"] = r.auc;
  d["skipped"] = r.skipped;
  py::list folds;
  for (const auto& f : r.per_fold) {
    py::dict df;
    df["precision"] = f.precision;
    df["recall"] = f.recall;
    df["f1"] = f.f1;
    df["auc"] = f.auc;
    df["test_size"] = f.test_size;
    folds.append(df);
  }
  d["per_fold"] = folds;
  d["warnings"] = r.warnings;
  return d;
}

embed::EmbeddingMatrix embed_network(const SimilarityNetwork& net, int dim,
                                     int walks_per_node, int walk_len, double p, double q,
                                     int window, int negatives, int epochs,
                                     double learning_rate, std::uint64_t seed) {
  embed::WalkParams wp;
  wp.walks_per_node = walks_per_node;
  wp.walk_len = walk_len;
  wp.p = p;
  wp.q = q;
  wp.seed = mix_seed(seed, 0x3A1Cull);
  auto walks = embed::generate_walks(net, wp);
  embed::SgnsParams sp;
  sp.dim = dim;
  sp.window = window;
  sp.negatives = negatives;
  sp.epochs = epochs;
  sp.learning_rate = learning_rate;
  sp.seed = mix_seed(seed, 0x3A1Dull);
  return embed::train_embeddings(walks, sp);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "coordinated-activity detection from behavioral similarity networks";

  // -- ingest ----------------------------------------------------------
  py::class_<RetweetInfo>(m, "RetweetInfo")
      .def(py::init<>())
      .def_readwrite("source_tweet_id", &RetweetInfo::source_tweet_id)
      .def_readwrite("source_author_id", &RetweetInfo::source_author_id)
      .def_readwrite("source_timestamp", &RetweetInfo::source_timestamp);

  py::class_<TweetRecord>(m, "TweetRecord")
      .def(py::init<>())
      .def_readwrite("tweet_id", &TweetRecord::tweet_id)
      .def_readwrite("author_id", &TweetRecord::author_id)
      .def_readwrite("timestamp", &TweetRecord::timestamp)
      .def_readwrite("text", &TweetRecord::text)
      .def_readwrite("hashtags", &TweetRecord::hashtags)
      .def_readwrite("urls", &TweetRecord::urls)
      .def_readwrite("retweet", &TweetRecord::retweet)
      .def("is_retweet", &TweetRecord::is_retweet);

  py::class_<Corpus>(m, "Corpus")
      .def(py::init<>())
      .def_readwrite("records", &Corpus::records)
      .def_property_readonly("users", [](const Corpus& c) { return c.users; })
      .def("__len__", [](const Corpus& c) { return c.records.size(); });

  py::class_<LabelRecord>(m, "LabelRecord")
      .def(py::init<>())
      .def_readwrite("user_id", &LabelRecord::user_id)
      .def_property(
          "label",
          [](const LabelRecord& r) {
            return r.label == Label::io_driver ? "io_driver" : "control";
          },
          [](LabelRecord& r, const std::string& v) {
            r.label = v == "io_driver" ? Label::io_driver : Label::control;
          })
      .def_readwrite("country", &LabelRecord::country)
      .def_readwrite("first_active_year", &LabelRecord::first_active_year);

  m.def("load_corpus", [](const std::string& path) {
    ingest::LoadReport rep;
    Corpus c = ingest::load_corpus(path, &rep);
    return py::make_tuple(c, rep.skipped);
  }, py::arg("path"), "Load a corpus; returns (corpus, skipped_line_count).");
  m.def("load_labels", &ingest::load_labels, py::arg("path"));
  m.def("write_corpus", &ingest::write_corpus, py::arg("corpus"), py::arg("path"));
  m.def("write_labels", &ingest::write_labels, py::arg("labels"), py::arg("path"));
  m.def("clean_text", py::overload_cast<const std::string&>(&clean_text), py::arg("text"));

  // -- traces ------------------------------------------------------------
  m.def("extract_events",
        [](const Corpus& corpus, const std::string& kind, int min_hashtags,
           std::int64_t max_delay_seconds) {
          auto events = traces::extract_events(corpus, trace_kind_from_name(kind),
                                               params_from_kwargs(min_hashtags,
                                                                  max_delay_seconds));
          py::list out;
          for (const auto& ev : events)
            out.append(py::make_tuple(ev.user_id, ev.entity_id, ev.count));
          return out;
        },
        py::arg("corpus"), py::arg("kind"), py::arg("min_hashtags") = 3,
        py::arg("max_delay_seconds") = 60);

  // -- networks ----------------------------------------------------------
  py::class_<SimilarityNetwork>(m, "SimilarityNetwork")
      .def(py::init<std::string>(), py::arg("kind") = "")
      .def("add_edge", &SimilarityNetwork::add_edge)
      .def("add_node", &SimilarityNetwork::add_node)
      .def("finalize", &SimilarityNetwork::finalize)
      .def_property_readonly("kind", &SimilarityNetwork::kind)
      .def("nodes", &SimilarityNetwork::nodes)
      .def("edges",
           [](const SimilarityNetwork& net) {
             py::list out;
             for (const auto& e : net.edges())
               out.append(py::make_tuple(net.node_name(e.a), net.node_name(e.b), e.weight));
             return out;
           })
      .def("node_count", &SimilarityNetwork::node_count)
      .def("edge_count", &SimilarityNetwork::edge_count)
      .def("has_node", &SimilarityNetwork::has_node)
      .def("write_edges", &SimilarityNetwork::write_edges)
      .def_static("read_edges", &SimilarityNetwork::read_edges, py::arg("edge_path"),
                  py::arg("node_path"), py::arg("kind") = "");

  m.def("build_network",
        [](const Corpus& corpus, const std::string& kind, int min_hashtags,
           std::int64_t max_delay_seconds, double text_sim_threshold, int text_window_days,
           int text_hash_dim, int text_min_words) {
          TraceKind k = trace_kind_from_name(kind);
          if (k == TraceKind::text_sim) {
            auto docs = traces::extract_documents(corpus, text_min_words);
            if (docs.docs.empty()) {
              SimilarityNetwork net("text_sim");
              net.finalize();
              return net;
            }
            simnet::HashedTfidfEmbedder embedder(text_hash_dim);
            auto vectors = simnet::embed_documents(docs, embedder);
            return simnet::text_similarity_network(docs, vectors, text_sim_threshold,
                                                   text_window_days);
          }
          auto events = traces::extract_events(
              corpus, k, params_from_kwargs(min_hashtags, max_delay_seconds));
          return simnet::build_trace_network(events, k);
        },
        py::arg("corpus"), py::arg("kind"), py::arg("min_hashtags") = 3,
        py::arg("max_delay_seconds") = 60, py::arg("text_sim_threshold") = 0.7,
        py::arg("text_window_days") = 365, py::arg("text_hash_dim") = 4096,
        py::arg("text_min_words") = 4,
        "Build one trace's similarity network straight from a corpus.");

  m.def("fuse", [](const std::vector<SimilarityNetwork>& nets) {
    return detect::fuse(nets).net;
  }, py::arg("networks"), "Union-of-edges fused network (unweighted).");

  // -- detect -------------------------------------------------------------
  py::class_<detect::DetectionResult>(m, "DetectionResult")
      .def_readonly("flagged", &detect::DetectionResult::flagged)
      .def_readonly("score", &detect::DetectionResult::score)
      .def_readonly("method", &detect::DetectionResult::method)
      .def_readonly("params", &detect::DetectionResult::params)
      .def_readonly("warning", &detect::DetectionResult::warning);

  m.def("eigenvector_centrality",
        [](const SimilarityNetwork& net, bool use_weights, double tol, int max_iter) {
          return detect::eigenvector_centrality(net, use_weights, tol, max_iter).scores;
        },
        py::arg("network"), py::arg("use_weights") = false, py::arg("tol") = 1e-10,
        py::arg("max_iter") = 1000);
  m.def("edge_filter", &detect::edge_filter, py::arg("network"), py::arg("percentile"));
  m.def("node_prune",
        py::overload_cast<const SimilarityNetwork&, double, bool>(&detect::node_prune),
        py::arg("network"), py::arg("centrality_threshold") = 1e-2,
        py::arg("use_weights") = false);
  m.def("backbone_filter", &detect::backbone_filter, py::arg("network"), py::arg("alpha"));

  // -- embed ----------------------------------------------------------------
  py::class_<embed::EmbeddingMatrix>(m, "EmbeddingMatrix")
      .def_readonly("users", &embed::EmbeddingMatrix::users)
      .def_readonly("dim", &embed::EmbeddingMatrix::dim)
      .def("vector",
           [](const embed::EmbeddingMatrix& m_, const std::string& user) {
             int idx = m_.index_of(user);
             if (idx < 0) throw py::key_error("no embedding for " + user);
             return std::vector<float>(m_.row(idx), m_.row(idx) + m_.dim);
           })
      .def("save", &embed::EmbeddingMatrix::save)
      .def_static("load", &embed::EmbeddingMatrix::load);

  m.def("embed_network", &embed_network, py::arg("network"), py::arg("dim") = 128,
        py::arg("walks_per_node") = 16, py::arg("walk_len") = 16, py::arg("p") = 1.0,
        py::arg("q") = 1.0, py::arg("window") = 5, py::arg("negatives") = 5,
        py::arg("epochs") = 5, py::arg("learning_rate") = 0.025, py::arg("seed") = 1,
        "node2vec-style embedding of a network.");

  // -- classify ----------------------------------------------------------
  m.def("cross_validate_embedding",
        [](const embed::EmbeddingMatrix& emb, const LabelMap& labels, int k, int n_trees,
           double flag_threshold, std::uint64_t seed) {
          auto features = classify::features_from_embedding(emb, labels);
          classify::CrossValParams cv;
          cv.k = k;
          cv.flag_threshold = flag_threshold;
          cv.forest.n_trees = n_trees;
          cv.seed = seed;
          return report_to_dict(classify::cross_validate(features, cv));
        },
        py::arg("embedding"), py::arg("labels"), py::arg("k") = 10,
        py::arg("n_trees") = 100, py::arg("flag_threshold") = 0.5, py::arg("seed") = 1);

  m.def("temporal_forecast",
        [](const Corpus& corpus, const LabelMap& labels, int cutoff_year,
           std::uint64_t seed) {
          classify::PipelineParams params;
          params.seed = seed;
          params.cv.seed = seed;
          return report_to_dict(classify::temporal_forecast(corpus, labels, cutoff_year,
                                                            params));
        },
        py::arg("corpus"), py::arg("labels"), py::arg("cutoff_year"), py::arg("seed") = 1);

  // -- eval -----------------------------------------------------------------
  m.def("roc_auc", [](const std::vector<std::pair<double, int>>& pairs) {
    return eval::roc_auc(eval::LabeledScores{pairs});
  }, py::arg("score_label_pairs"));
  m.def("precision_recall_f1",
        [](const std::set<std::string>& flagged, const LabelMap& labels) {
          auto prf = eval::precision_recall_f1(flagged, labels);
          return py::make_tuple(prf.precision, prf.recall, prf.f1);
        },
        py::arg("flagged"), py::arg("labels"));
  m.def("nmi", &eval::nmi, py::arg("groups_a"), py::arg("groups_b"));
  m.def("coverage", &eval::coverage, py::arg("network"), py::arg("labels"));

  // -- synth -------------------------------------------------------------
  m.def("generate_scenario",
        [](const std::string& config_json) {
          auto scenario = synth::generate_scenario(
              synth::ScenarioConfig::from_json(config_json));
          return py::make_tuple(scenario.corpus, scenario.labels);
        },
        py::arg("config_json"), "Generate (corpus, labels) from a scenario config.");
  m.def("standard_scenario_json", [](std::uint64_t seed) {
    return synth::ScenarioConfig::standard(seed).to_json();
  }, py::arg("seed") = 1);

  m.attr("__version__") = "0.1.0";
}
