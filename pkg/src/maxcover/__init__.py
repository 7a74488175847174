"""Itemset hiding for transactional databases.

Given a database and a set of restrictive frequent itemsets, the sanitizer
deletes a minimal selection of high-cover items from sensitive transactions
so that no restrictive itemset survives, and the metrics module quantifies
the privacy/utility trade-off of the result.
"""

from .transactions import (Item, Pattern, RestrictivePatterns, Transaction,
                           TransactionDatabase, contains, support_count)
from .dataio import (FormatError, parse_fimi, parse_patterns, read_fimi,
                     read_patterns, save_fimi, write_fimi, write_patterns)
from .miner import (FrequentItemsets, absolute_threshold, brute_force_frequent,
                    mine_frequent)
from .index import (PatternIndex, build_index, common_tids, dump_tables,
                    nonsensitive_part, sensitive_order)
from .sanitizer import (Removal, RoundRobin, SanitizationLog, SanitizationResult,
                        SanitizationState, sanitize, select_victim)
from .metrics import (MetricsReport, artifactual_patterns, dissimilarity,
                      evaluate, hiding_failure, item_frequencies, misses_cost,
                      sanitization_rate)
from .datagen import generate_baskets

__version__ = "0.1.0"
