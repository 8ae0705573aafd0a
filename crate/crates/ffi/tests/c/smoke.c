/* SPDX-License-Identifier: Apache-2.0 */
#include <stdio.h>
#include <string.h>
#include "xmodcat.h"

int main(void) {
    size_t z2[4] = {0, 1, 1, 0};
    XmcGroup *g = NULL;
    if (xmc_group_from_table(z2, 2, &g) != XMC_STATUS_OK || xmc_group_order(g) != 2) return 10;
    xmc_group_free(g);

    size_t bad[4] = {0, 1, 0, 1};
    if (xmc_group_from_table(bad, 2, &g) != XMC_STATUS_INVALID_INPUT) return 11;
    char *err = xmc_last_error_message();
    if (err == NULL || strlen(err) == 0) return 12;
    xmc_string_free(err);

    const char *scenario =
        "{\"schema_version\":1,\"kind\":\"cohomology-h2\",\"input\":{"
        "\"Q\":{\"group\":{\"order\":2,\"table\":[[0,1],[1,0]]},\"action\":{\"gamma\":{\"order\":1,\"table\":[[0]]},\"act\":[[0,1]]}},"
        "\"B\":{\"group\":{\"order\":2,\"table\":[[0,1],[1,0]]},\"action\":{\"gamma\":{\"order\":1,\"table\":[[0]]},\"act\":[[0,1]]}}}}";
    char *report = NULL;
    XmcStatus s = xmc_run_scenario_json(scenario, &report);
    if (s != XMC_STATUS_OK) {
        char *m = xmc_last_error_message();
        fprintf(stderr, "status %d: %s\n", (int)s, m ? m : "");
        return 13;
    }
    if (strstr(report, "\"passed\"") == NULL) return 14;
    xmc_string_free(report);
    puts("ok");
    return 0;
}
