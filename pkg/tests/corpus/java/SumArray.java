import java.util.Scanner;

public class SumArray {
    public static void main(String[] args) {
        Scanner sc = new Scanner(System.in);
        int n = sc.nextInt();
        int total = 0;
        int count = 0;
        for (int i = 0; i < n; i++) {
            int value = sc.nextInt();
            total += value;
            count++;
        }
        System.out.println(total);
        System.out.println(count);
    }
}
