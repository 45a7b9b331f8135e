#include <stdio.h>
#include <string.h>
#include "clexp.h"

#define CHECK(expr)                                                      \
    do {                                                                 \
        ClexpStatus s_ = (expr);                                         \
        if (s_ != CLEXP_STATUS_OK) {                                     \
            fprintf(stderr, "%s -> %d: %s\n", #expr, s_, clexp_last_error()); \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(void) {
    ClexpGroup *g = NULL;
    ClexpPartition *p = NULL;
    uint64_t order = 0;
    size_t classes = 0;
    char *dk = NULL;

    CHECK(clexp_group_from_spec("alt:5", &g));
    CHECK(clexp_group_order(g, &order));
    CHECK(clexp_partition_new(g, &p));
    CHECK(clexp_partition_num_classes(p, &classes));
    CHECK(clexp_partition_dk(p, "5A", &dk));
    printf("order=%llu classes=%zu dk=%s\n", (unsigned long long)order, classes, dk);
    int ok = order == 60 && classes == 5 && strcmp(dk, "5A,5B") == 0;
    if (clexp_group_from_spec("nonsense", &g) != CLEXP_STATUS_INVALID_SPEC) {
        ok = 0;
    }
    clexp_string_free(dk);
    clexp_partition_free(p);
    clexp_group_free(g);
    return ok ? 0 : 1;
}
