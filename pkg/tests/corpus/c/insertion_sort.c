#include <stdio.h>

int main() {
    int n;
    scanf("%d", &n);
    int data[100];
    for (int i = 0; i < n; i++) {
        scanf("%d", &data[i]);
    }
    for (int i = 1; i < n; i++) {
        int key = data[i];
        int j = i - 1;
        while (j >= 0 && data[j] > key) {
            data[j + 1] = data[j];
            j--;
        }
        data[j + 1] = key;
    }
    for (int i = 0; i < n; i++) {
        printf("%d\n", data[i]);
    }
    return 0;
}
