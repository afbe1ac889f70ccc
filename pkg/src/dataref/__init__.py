"""dataref: semi-automatic dataset-reference detection and linking."""

from .detector import ArticleText, ReferenceCandidate, find_references, match_feature, split_sentences
from .dictionary import (Feature, FeatureDictionary, apply_false_positives,
                         build_dictionary, extract_abbreviations,
                         extract_allcaps_tokens, extract_phrases,
                         load_base_terms, load_wordlists, pattern_stats,
                         preprocess_titles)
from .evaluator import (EvaluationReport, GoldStandard, evaluate_combined,
                        evaluate_detection, evaluate_matching, f_measure)
from .exporter import (ArticleMetadata, Link, LinkSet, export_json,
                       export_ntriples, export_turtle, import_json)
from .ranker import (RankedMatch, RankerConfig, RankingCorpus,
                     aggregate_per_feature, cosine, idf, rank_candidates,
                     set_similarity, tf_weight, tfidf_score, weight_vector,
                     year_boost)
from .registry import (DatasetRecord, RegistryIndex, load_snapshot,
                       titles_containing, write_snapshot)

__version__ = "0.1.0"
