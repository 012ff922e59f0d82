#include <stdio.h>

int main() {
    int n;
    scanf("%d", &n);
    int values[100];
    for (int i = 0; i < n; i++) {
        scanf("%d", &values[i]);
    }
    int lo = 0;
    int hi = n - 1;
    while (lo < hi) {
        int tmp = values[lo];
        values[lo] = values[hi];
        values[hi] = tmp;
        lo++;
        hi--;
    }
    for (int i = 0; i < n; i++) {
        printf("%d\n", values[i]);
    }
    return 0;
}
