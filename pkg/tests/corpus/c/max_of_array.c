#include <stdio.h>

int main() {
    int n;
    scanf("%d", &n);
    int best = -1000000;
    for (int i = 0; i < n; i++) {
        int v;
        scanf("%d", &v);
        if (v > best) {
            best = v;
        }
    }
    printf("%d\n", best);
    return 0;
}
