import java.util.Scanner;

public class SelectionSort {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int[] data = new int[n];
        for (int i = 0; i < n; i++) {
            data[i] = sc.nextInt();
        }
        for (int i = 0; i < n; i++) {
            int best = i;
            for (int j = i + 1; j < n; j++) {
                if (data[j] < data[best]) {
                    best = j;
                }
            }
            int tmp = data[i];
            data[i] = data[best];
            data[best] = tmp;
        }
        for (int i = 0; i < n; i++) {
            System.out.println(data[i]);
        }
    }
}
