import java.util.Scanner;

public class ReverseArray {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int[] values = new int[n];
        for (int i = 0; i < n; i++) {
            values[i] = sc.nextInt();
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
            System.out.println(values[i]);
        }
    }
}
