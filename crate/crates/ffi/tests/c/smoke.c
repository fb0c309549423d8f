#include <stdio.h>
#include <string.h>

#include "moore_learn.h"

int main(void) {
    MlTraceSet *ts = NULL;
    MlMachine *m = NULL;
    char *out = NULL;
    const char *sample = "x1 | y1 y1\nx2 x1 | y1 y2 y1\nx2 x2 | y1 y2 y2\n";
    if (ml_traceset_parse(sample, &ts) != ML_STATUS_OK) return 1;
    if (ml_learn(ts, ML_ALGORITHM_MOORE_MI, 0.0, &m) != ML_STATUS_OK) return 2;
    if (ml_machine_run(m, "x2 x1", &out) != ML_STATUS_OK) return 3;
    if (strcmp(out, "y1 y2 y1") != 0) return 4;
    ml_string_free(out);
    if (ml_traceset_parse("a | 0\n", &ts) != ML_STATUS_PARSE) return 5;
    if (strstr(ml_last_error(), "line 1") == NULL) return 6;
    ml_machine_free(m);
    puts("ok");
    return 0;
}
