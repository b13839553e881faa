/* Load an edge list, score two words, print the result. */
#include <stdio.h>
#include <stdlib.h>

#include "taxosim.h"

static int fail(const char *what, TaxosimStatus status) {
    const char *msg = taxosim_last_error_message();
    fprintf(stderr, "%s failed (%d): %s\n", what, (int)status, msg ? msg : "?");
    return 1;
}

int main(int argc, char **argv) {
    if (argc != 4) {
        fprintf(stderr, "usage: %s EDGE_LIST WORD1 WORD2\n", argv[0]);
        return 2;
    }

    TaxosimTaxonomy *tax = NULL;
    TaxosimStatus st = taxosim_taxonomy_load_edge_list(argv[1], &tax);
    if (st != TAXOSIM_STATUS_OK) return fail("load", st);

    size_t nodes = 0;
    uint32_t depth = 0;
    taxosim_taxonomy_node_count(tax, &nodes);
    taxosim_taxonomy_max_depth(tax, &depth);

    TaxosimScorer *scorer = NULL;
    st = taxosim_scorer_new(tax, "wu", "density:0.3", NULL, NULL, NULL, &scorer);
    taxosim_taxonomy_free(tax);
    if (st != TAXOSIM_STATUS_OK) return fail("scorer", st);

    TaxosimScore score;
    st = taxosim_scorer_sim_words(scorer, argv[2], argv[3], &score);
    if (st != TAXOSIM_STATUS_OK) return fail("sim", st);

    printf("version %s\nnodes %zu\nmax_depth %u\nscore %.6f\nunknown %d\n",
           taxosim_version(), nodes, depth, score.value, (int)score.unknown_word);

    st = taxosim_scorer_sim_words(NULL, argv[2], argv[3], &score);
    printf("null_status %d\n", (int)st);

    taxosim_scorer_free(scorer);
    return 0;
}
