import java.util.Scanner;

public class MinMax {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int smallest = 1000000;
        int largest = -1000000;
        for (int i = 0; i < n; i++) {
            int v = sc.nextInt();
            if (v < smallest) {
                smallest = v;
            }
            if (v > largest) {
                largest = v;
            }
        }
        System.out.println(smallest);
        System.out.println(largest);
    }
}
