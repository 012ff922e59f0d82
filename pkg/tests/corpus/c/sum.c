#include <stdio.h>

int main() {
    int n;
    scanf("%d", &n);
    int total = 0;
    int count = 0;
    for (int i = 0; i < n; i++) {
        int v;
        scanf("%d", &v);
        total += v;
        count++;
    }
    printf("%d\n", total);
    printf("%d\n", count);
    return 0;
}
