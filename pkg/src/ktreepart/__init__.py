"""Recognition and l-tree-partitions of k-trees and oriented k-trees."""
