#include <stdio.h>
#include <string.h>
#include "coretower.h"

#define CHECK(cond) do { if (!(cond)) { fprintf(stderr, "failed: %s (line %d)\n", #cond, __LINE__); return 1; } } while (0)

int main(void) {
    CtPartition *p = NULL, *core = NULL;
    CHECK(ct_partition_parse("5,4,2,2,1", &p) == CT_STATUS_OK);
    CHECK(ct_t_core(p, 2, &core) == CT_STATUS_OK);
    CHECK(ct_partition_size(core) == 6);

    size_t d = 0;
    CHECK(ct_defect(p, 2, &d) == CT_STATUS_OK && d == 6);

    char *text = NULL;
    CHECK(ct_partition_to_string(core, &text) == CT_STATUS_OK);
    CHECK(strcmp(text, "(3,2,1)") == 0);
    ct_string_free(text);

    CHECK(ct_t_core(p, 1, &core) == CT_STATUS_INVALID_ARGUMENT);
    CHECK(ct_last_error_message() != NULL);

    CtSeries *s = NULL;
    CHECK(ct_series_build(CT_FAMILY_ROW_SIZE, CT_MODE_CLOSED, 0, 2, 3, &s) == CT_STATUS_OK);
    char *c = NULL;
    CHECK(ct_series_coeff(s, 3, &c) == CT_STATUS_OK && strcmp(c, "5") == 0);
    ct_string_free(c);
    ct_series_free(s);

    ct_partition_free(core);
    ct_partition_free(p);
    puts("ok");
    return 0;
}
